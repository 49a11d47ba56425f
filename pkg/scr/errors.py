class SolverDivergenceError(RuntimeError):
    """Raised when an ADMM iterate becomes non-finite."""

    def __init__(
            self,
            iteration: int,
            key: tuple[int, int] | None = None,
            quantity: str = "X"
    ):
        self.iteration = iteration
        self.key = key
        self.quantity = quantity
        super().__init__(self._message())

    def _message(self) -> str:
        msg = f'Non-finite values in "{self.quantity}" at ADMM iteration {self.iteration}'
        if self.key is not None:
            msg += f" (patch group with key at row {self.key[0]}, column {self.key[1]})"
        return msg

    def with_key(
            self,
            key: tuple[int, int]
    ) -> "SolverDivergenceError":
        return SolverDivergenceError(self.iteration, key=key, quantity=self.quantity)


class CoverageError(RuntimeError):
    """Raised when aggregation finds a pixel no patch has written to."""


class ImageReadError(OSError):
    """Raised when an input image cannot be read or decoded."""
