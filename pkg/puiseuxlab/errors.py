import json
from typing import Optional, Union


class PuiseuxLabError(Exception):
    """Raise a specialized error that carries structured detail about what went wrong."""

    kind = "Lab"

    def __init__(self, code: str, message: str = "", *args, **kwargs):
        """
        Errors carry a detail payload that looks like this:
        {
            "code": "rational.zero-denominator",
            "message": "Denominator must be nonzero.",
            "data": {
                "numerator": 3
            }
        }

        But not all of these fields may be present in all cases.
        """
        super().__init__(message, *args)

        self.detail: dict = {"code": code, "message": message}
        data = kwargs.pop("data", None)
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError:
                data = {"raw": data}
        if data:
            self.detail["data"] = data

    def __str__(self):
        if self.message:
            return f"{self.kind} error [{self.code}]: {self.message}"
        return f"{self.kind} error [{self.code}]"

    @property
    def code(self) -> str:
        return self.detail.get("code", "")

    @property
    def message(self) -> str:
        return self.detail.get("message", "")

    @property
    def data(self) -> dict:
        return self.detail.get("data", {})


class LabDomainError(PuiseuxLabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    kind = "Domain"


class PreconditionError(LabDomainError):
    """A documented precondition of an operation does not hold."""

    kind = "Precondition"


class ExpressionSyntaxError(PuiseuxLabError, ValueError):
    """The expression text does not conform to the grammar."""

    kind = "Syntax"

    def __init__(self, code: str, message: str = "", position: Optional[int] = None, text: str = "", **kwargs):
        super().__init__(code, message, **kwargs)
        self.position = position
        self.text = text

    @property
    def column(self) -> Union[int, None]:
        if self.position is None:
            return None
        return self.position + 1

    def __str__(self):
        base = super().__str__()
        if self.position is None:
            return base
        return f"{base} at column {self.column}"
