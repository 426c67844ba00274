"""Numerical tolerances shared by every module."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    supp: float = 1e-12     # entries at or below this are flushed to 0
    eq: float = 1e-10       # equality / monotonicity checks along a trace
    assertion: float = 1e-9  # contract assertions on f-values
    loose: float = 1e-6     # cross-method agreement (t_of vs certificates)
    det: float = 1e-10      # singularity threshold for the halfspace solver
    move: float = 1e-12     # slack in the merge condition

    def with_overrides(self, **kw) -> "Tolerances":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


TOL = Tolerances()
