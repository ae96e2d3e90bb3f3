"""Exception types shared by every layer."""


class CombilogError(Exception):
    pass


class MalformedInput(CombilogError, ValueError):
    """A sentence, model or symbol does not belong to the signature it is used with."""


class ContractViolation(CombilogError, ValueError):
    """A precondition on an operation's arguments was broken."""


class ResourceLimit(CombilogError, RuntimeError):
    pass


class UnsupportedModel(CombilogError, TypeError):
    pass


class ParseError(CombilogError, ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"column {pos + 1}: {message}")

    def annotate(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^\nerror at column {self.pos + 1}: {self.message}"
