"""
FrogLab
Percolation Inequalities v1.0
20260926

X_L <= N_{(d+1)L} and the tessellation chain bound, evaluated together on
one synthetic M-dependent field.
"""

from dataclasses import dataclass

from froglab.percolation.fields import SiteField, gen_m_dependent_field
from froglab.percolation.paths import ANIMAL_CELL_CAP, AnimalBoundReport, animal_bound_check
from froglab.percolation.tessellation import (
    TessellationReport,
    group_field_radius,
    projected_budget,
    tessellation_bound_check,
)

@dataclass(frozen=True)
class InequalityReport:
    site_field: SiteField
    animal: AnimalBoundReport
    tessellation: TessellationReport

    @property
    def violation(self) -> bool:
        return not (self.animal.holds and self.tessellation.holds and self.tessellation.density_holds)


def perc_field_radius(d: int, L: int, M: int) -> int:
    """Radius covering both B((d+1)L) and every tessellation box used for L."""
    return max((d + 1) * L, group_field_radius(M, projected_budget(L, M)))


def check_inequalities(
    seed: int, d: int, L: int, M: int, p: float, animal_cap: int = ANIMAL_CELL_CAP
) -> InequalityReport:
    site_field = gen_m_dependent_field(seed, perc_field_radius(d, L, M), M, p, d)
    return InequalityReport(
        site_field,
        animal_bound_check(site_field, L, animal_cap),
        tessellation_bound_check(site_field, L, M),
    )
