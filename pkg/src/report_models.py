"""
Slice Workbench - Report Models
Pydantic payload models for every workbench report, with flat table rows
for the table and TSV renderings
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class GroupModel(BaseModel):
    free: int = 0
    torsion: List[int] = Field(default_factory=list)


class SphereHomologyReport(BaseModel):
    group: str
    rep: str
    dim: int
    level: str
    coefficients: str
    cohomological: bool
    fixed_dims: List[int]
    homology: Dict[str, GroupModel]
    labels: Dict[str, str]
    orbit_types: Dict[str, Dict[str, int]] = {}

    def rows(self) -> List[Dict[str, object]]:
        name = "H^" if self.cohomological else "H_"
        return [{"degree": int(d), "group": f"{name}{d}", "value": self.labels[d]}
                for d in sorted(self.homology, key=int)]


class GapRow(BaseModel):
    m: int
    i: int
    group: str
    passed: bool


class GapReport(BaseModel):
    group: str
    m_max: int
    passed: bool
    checks: List[GapRow]

    def rows(self) -> List[Dict[str, object]]:
        return [row.model_dump() for row in self.checks]


class RegionCellModel(BaseModel):
    s: int
    stem: int
    basis: List[str]
    sigma_weights: List[int]


class SliceRegionReport(BaseModel):
    g: int
    n: int
    vanishing_range: List[int]
    k: Optional[int] = None
    chart: List[RegionCellModel] = Field(default_factory=list)

    def rows(self) -> List[Dict[str, object]]:
        if not self.chart:
            lo, hi = self.vanishing_range
            return [{"g": self.g, "n": self.n, "k_min": lo, "k_max": hi}]
        return [{"stem": c.stem, "s": c.s, "basis": " ".join(c.basis),
                 "sigma_weights": " ".join(str(w) for w in c.sigma_weights)} for c in self.chart]


class RefinementCellModel(BaseModel):
    subgroup: str
    m: int
    multiplicity: int
    orbit_size: int
    cell: str


class RefinedOrbitModel(BaseModel):
    representative: str
    size: int
    cell: str
    sign_twisted: bool


class RefinementReport(BaseModel):
    g: int
    degree: int
    rank: int
    expected_rank: int
    cells: List[RefinementCellModel]
    orbits: List[RefinedOrbitModel]

    def rows(self) -> List[Dict[str, object]]:
        return [orbit.model_dump() for orbit in self.orbits]


class PageModel(BaseModel):
    k: int
    r: int
    ranks_after: List[int]


class SSRunReport(BaseModel):
    g: int
    bound: int
    pages: List[PageModel]
    e_infinity_ranks: List[int]
    e_infinity: Dict[str, List[str]]

    def rows(self) -> List[Dict[str, object]]:
        return [{"stem": t, "rank": rank, "basis": " ".join(self.e_infinity[str(t)])}
                for t, rank in enumerate(self.e_infinity_ranks)]


class PolyRow(BaseModel):
    index: int
    value: str
    zero: bool
    linear_part: str = ""


class GeneratorTable(BaseModel):
    kind: str
    precision: int
    entries: List[PolyRow]
    checks: Dict[str, bool] = Field(default_factory=dict)

    def rows(self) -> List[Dict[str, object]]:
        return [row.model_dump() for row in self.entries]


class GradedValueModel(BaseModel):
    pi_poly: List[int]
    w_exp: int


class ValueRow(BaseModel):
    name: str
    value: GradedValueModel
    pretty: str
    pi_valuation: int


class ValueTable(BaseModel):
    kind: str
    precision: int
    entries: List[ValueRow]
    checks: Dict[str, bool] = Field(default_factory=dict)

    def rows(self) -> List[Dict[str, object]]:
        return [{"name": r.name, "value": r.pretty, "pi_valuation": r.pi_valuation} for r in self.entries]


class CohomologyRow(BaseModel):
    s: int
    m: int
    mod2: bool
    group: str
    a_module: str
    passed: bool


class CohomologyReport(BaseModel):
    m_max: int
    entries: List[CohomologyRow]

    def rows(self) -> List[Dict[str, object]]:
        return [row.model_dump() for row in self.entries]


class SRow(BaseModel):
    subgroup: str
    i: int
    value: GradedValueModel
    pretty: str
    pi_valuation: int
    unit: bool
    passed: bool


class BocksteinRow(BaseModel):
    j: int
    nonzero: bool
    order: Optional[int]
    witness: Dict[str, Any]
    alternative_nonzero: bool
    passed: Optional[bool]


class BetaRow(BaseModel):
    j: int
    k: int
    c: int
    value: str
    passed: bool


class AlphaRow(BaseModel):
    j: int
    value: str
    passed: bool


class CheckItem(BaseModel):
    name: str
    passed: bool
    witness: Any = None


class DetectionReport(BaseModel):
    jmax: int
    s_table: List[SRow]
    bockstein: List[BocksteinRow]
    beta_bounds: List[BetaRow]
    alpha_bounds: List[AlphaRow]
    items: List[CheckItem]
    verdict: str

    def rows(self) -> List[Dict[str, object]]:
        rows = [{"section": "s", "item": f"{r.subgroup},{r.i}", "value": r.pretty,
                 "passed": r.passed} for r in self.s_table]
        rows += [{"section": "bockstein", "item": f"j={b.j}", "value": b.witness.get("pretty", ""),
                  "passed": b.passed} for b in self.bockstein]
        rows += [{"section": "check", "item": i.name, "value": "", "passed": i.passed} for i in self.items]
        rows.append({"section": "verdict", "item": "", "value": self.verdict, "passed": self.verdict == "pass"})
        return rows


class CriterionResult(BaseModel):
    id: int
    name: str
    passed: bool
    detail: str


class VerificationReport(BaseModel):
    results: List[CriterionResult]
    passed: bool

    def rows(self) -> List[Dict[str, object]]:
        return [{"id": r.id, "name": r.name, "passed": "✅" if r.passed else "❌", "detail": r.detail}
                for r in self.results]
