class AtlApproxError(Exception):
    """Base class for errors raised by this package."""


class ModelError(AtlApproxError):
    """A model could not be built, loaded or queried."""


class FormulaError(AtlApproxError):
    """A formula is ill-formed for the requested operation."""


class ParseError(FormulaError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class BudgetExceeded(AtlApproxError):
    """A strategy search hit its configured ceiling.

    This is an outcome, not a verdict: the query has no answer within budget.
    """

    def __init__(self, what: str, budget: int):
        super().__init__(f"search budget exceeded: {what} (budget {budget})")
        self.what = what
        self.budget = budget
