class FoldxError(RuntimeError):
    pass


class DimensionError(FoldxError):
    pass


class EnvelopeError(FoldxError):
    pass


class NotATilingError(FoldxError):
    pass


class NotAFoldingError(FoldxError):
    def __init__(self, message: str, cycle_length: int) -> None:
        super().__init__(message)
        self.cycle_length = cycle_length


class MorphError(FoldxError):
    pass


class FieldError(FoldxError):
    pass


class SizeMismatchError(FoldxError):
    pass


class VerificationError(FoldxError):
    pass
