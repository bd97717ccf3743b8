"""Exception hierarchy.

Every validation failure raised by the library derives from
:class:`BayesErrorInputError`, itself a :class:`ValueError`, so callers can
catch the whole family in one place (the CLI maps it to exit code 2).
"""


class BayesErrorInputError(ValueError):
    """Base class for invalid-input conditions."""


class EmptyDatasetError(BayesErrorInputError):
    def __init__(self, what="dataset"):
        super().__init__(f"{what} is empty")


class InvalidLabelError(BayesErrorInputError):
    """A label value falls outside its admissible range."""

    def __init__(self, index, value, low=0.0, high=1.0):
        self.index = index
        self.value = value
        super().__init__(
            f"label at index {index} is {value!r}, expected a value in [{low}, {high}]"
        )


class LengthMismatchError(BayesErrorInputError):
    def __init__(self, n_values, n_signs):
        super().__init__(f"{n_values} noisy values but {n_signs} sign labels")


class InvalidSignError(BayesErrorInputError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"sign label at index {index} is {value!r}, expected +1 or -1")


class InvalidPriorError(BayesErrorInputError):
    def __init__(self, value):
        super().__init__(f"class prior {value!r} is not in (0, 1]")


class InvalidDeltaError(BayesErrorInputError):
    def __init__(self, value):
        super().__init__(f"delta {value!r} is not in (0, 1)")


class UnsupportedKindError(BayesErrorInputError):
    def __init__(self, kind, reason=""):
        msg = f"operation not supported for estimator kind {kind}"
        super().__init__(f"{msg}: {reason}" if reason else msg)


class TooFewSamplesError(BayesErrorInputError):
    def __init__(self, n, minimum=2):
        super().__init__(f"need at least {minimum} samples, got {n}")


class UnknownPresetError(BayesErrorInputError):
    def __init__(self, name, known=()):
        hint = f" (known: {', '.join(known)})" if known else ""
        super().__init__(f"unknown preset {name!r}{hint}")


class DimensionMismatchError(BayesErrorInputError):
    pass


class InvalidCovarianceError(BayesErrorInputError):
    pass


class NotApplicableError(BayesErrorInputError):
    pass


class ParseError(BayesErrorInputError):
    def __init__(self, line, message, path=None):
        self.line = line
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: {message}")


class DuplicateSampleError(BayesErrorInputError):
    def __init__(self, sample_id):
        self.sample_id = sample_id
        super().__init__(f"duplicate sample id {sample_id!r}")


class ZeroVotesError(BayesErrorInputError):
    def __init__(self, sample_id):
        self.sample_id = sample_id
        super().__init__(f"sample {sample_id!r} has zero total votes")


class UncoveredClassError(BayesErrorInputError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"class {name!r} is not covered by the grouping")


class MissingHardLabelError(BayesErrorInputError):
    def __init__(self, sample_id):
        self.sample_id = sample_id
        super().__init__(f"no hard label for sample {sample_id!r}")


class MissingLabelError(BayesErrorInputError):
    def __init__(self, sample_id):
        self.sample_id = sample_id
        super().__init__(f"no label for prediction of sample {sample_id!r}")
