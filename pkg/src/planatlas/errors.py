"""Exception hierarchy shared across the package.

Every error that can reach the CLI or the HTTP service derives from
PlanatlasError and carries a stable machine-readable ``code``.
"""

from __future__ import annotations


class PlanatlasError(Exception):
    """Base class for all package errors."""

    code = "error"

    def payload(self) -> dict:
        """Machine-readable form used by the CLI (stderr JSON) and the service."""
        return {"type": self.code, "message": str(self)}


class PddlSyntaxError(PlanatlasError):
    """Malformed PDDL input; carries 1-based source position."""

    code = "syntax-error"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column

    def payload(self) -> dict:
        out = super().payload()
        out["line"] = self.line
        out["column"] = self.column
        return out


class UnsupportedRequirementError(PlanatlasError):
    """PDDL requirement outside the :strips + :typing subset."""

    code = "unsupported-requirement"

    def __init__(self, requirement: str):
        super().__init__(f"unsupported requirement {requirement}")
        self.requirement = requirement


class UnsupportedFeatureError(PlanatlasError):
    """Construct outside the supported subset (negative preconditions, ADL, ...)."""

    code = "unsupported-feature"

    def __init__(self, feature: str, detail: str = ""):
        msg = f"unsupported feature: {feature}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.feature = feature


class ValidationError(PlanatlasError):
    """Semantic error in otherwise well-formed input (unknown object, bad type...)."""

    code = "validation-error"


class GroundingCapExceeded(PlanatlasError):
    """Grounding would produce more actions than the configured cap."""

    code = "grounding-cap-exceeded"

    def __init__(self, cap: int):
        super().__init__(f"grounded action count exceeds cap of {cap}")
        self.cap = cap


class UnknownNodeError(PlanatlasError):
    """Node id not present in the transition graph."""

    code = "unknown-node"


class UnknownFluentError(PlanatlasError):
    """Fluent id not present in the grounded domain."""

    code = "unknown-fluent"


class PreconditionViolation(PlanatlasError):
    """An action was applied in a state that misses some of its preconditions."""

    code = "precondition-violation"

    def __init__(self, action_id: str, missing):
        self.action_id = action_id
        self.missing = tuple(sorted(missing))
        super().__init__(
            f"action {action_id} missing preconditions: {', '.join(self.missing)}"
        )


class NotReadyError(PlanatlasError):
    """A result was requested before its background computation finished."""

    code = "not-ready"


class Unsolvable(PlanatlasError):
    """Search space exhausted without reaching the goal."""

    code = "unsolvable"


class BudgetExceeded(PlanatlasError):
    """Search stopped after expanding the configured node budget."""

    code = "budget-exceeded"

    def __init__(self, budget: int):
        super().__init__(f"node budget of {budget} expansions exceeded")
        self.budget = budget


class InvalidPlanError(PlanatlasError):
    """A plan failed replay validation; carries the validator's report."""

    code = "invalid-plan"

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class MutexViolation(PlanatlasError):
    """A fluent family did not have exactly one member true in some state."""

    code = "mutex-violation"

    def __init__(self, state_index: int, members):
        self.state_index = state_index
        self.members = tuple(sorted(members))
        super().__init__(
            f"state {state_index} holds {len(self.members)} members of the family: "
            f"[{', '.join(self.members)}]"
        )
