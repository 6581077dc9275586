"""
Slice Workbench - Service Layer
Clean JSON payloads over every workbench computation for the CLI and
for library callers
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel

import acceptance_checks
from detection_service import (cohomology_R, detection_report, predicted_cohomology,
                               check_periodicity)
from errors import WorkbenchError
from formal_a_module import FormalAModule, hazewinkel_images, t_functions, verify_t_functions
from formal_groups import frobenius_h, mo_generators, rbar_generators, rbar_geometric_reduction
from rep_sphere import (bredon_cohomology, bredon_homology, build_complex, gap_check, parse_group,
                        parse_rep)
from report_models import (CohomologyReport, CohomologyRow, CriterionResult, DetectionReport,
                           GapReport, GeneratorTable, GroupModel, PageModel, PolyRow,
                           RefinedOrbitModel, RefinementCellModel, RefinementReport,
                           RegionCellModel, SliceRegionReport, SphereHomologyReport,
                           SSRunReport, ValueRow, ValueTable, VerificationReport)
from slice_cells import rank_pi_u, refine_orbits, vanishing_range
from slice_spectral_sequence import e2_region_chart, inverted_ss_run
from sparse_poly import SparsePolyRing

logger = logging.getLogger(__name__)

DEFAULT_FGL_PRECISION = {"h": 31, "rbar": 8, "haz": 4, "tfun": 4}


class WorkbenchService:
    """
    Payload façade over the workbench computations.

    Methods return {"success": True, "data": ...} or
    {"success": False, "error": {"code", "message", "user_message"}}
    and never raise.
    """

    def __init__(self, jmax: Optional[int] = None, precision: Optional[int] = None,
                 ss_bound: Optional[int] = None, jobs: Optional[int] = None):
        """Explicit arguments win over WORKBENCH_* environment values."""
        load_dotenv()
        self.jmax = jmax if jmax is not None else int(os.getenv("WORKBENCH_JMAX", "10"))
        self.precision = precision if precision is not None else int(os.getenv("WORKBENCH_PRECISION", "16"))
        self.ss_bound = ss_bound if ss_bound is not None else int(os.getenv("WORKBENCH_SS_BOUND", "20"))
        self.jobs = jobs if jobs is not None else int(os.getenv("WORKBENCH_JOBS", "1"))

    # -- plumbing -------------------------------------------------------

    def _respond(self, action: str, compute: Callable[[], BaseModel]) -> Dict[str, Any]:
        try:
            report = compute()
            return {"success": True, "data": report.model_dump(mode="json")}
        except ValueError as e:
            logger.info("%s rejected input: %s", action, e)
            return self._error("INVALID_INPUT", str(e), "The request parameters are invalid.")
        except WorkbenchError as e:
            logger.error("%s failed: %s", action, e)
            return self._error(e.code, str(e), e.user_message)
        except Exception as e:
            logger.exception("%s crashed", action)
            return self._error("INTERNAL", str(e), WorkbenchError.user_message)

    @staticmethod
    def _error(code: str, message: str, user_message: str) -> Dict[str, Any]:
        return {
            "success": False,
            "error": {
                "code": code,
                "message": message,
                "user_message": user_message,
            },
        }

    # -- representation spheres ------------------------------------------------

    def sphere_homology(self, group: str, rep: str, cohomology: bool = False,
                        level: Optional[int] = None, coeff: str = "Z") -> Dict[str, Any]:
        """
        Bredon (co)homology of S^V.

        Args:
            group: "C2", "C4", "C8", ...
            rep: Representation string such as "2*rho(8) + sigma"
            cohomology: Compute cohomology instead of homology
            level: Order of the subgroup H (default G)
            coeff: "Z" or "Z/2"
        """
        def compute():
            n = parse_group(group)
            V = parse_rep(rep, n)
            graded = (bredon_cohomology if cohomology else bredon_homology)(V, level, coeff)
            return SphereHomologyReport(
                group=f"C{V.group_order}",
                rep=V.label(),
                dim=V.dim,
                level=f"C{level or V.group_order}",
                coefficients=coeff,
                cohomological=cohomology,
                fixed_dims=list(V.fixed_dims()),
                homology={str(d): GroupModel(**grp.to_json()) for d, grp in graded.groups},
                labels={str(d): str(grp) for d, grp in graded.groups},
                orbit_types={str(d): {str(size): count for size, count in sizes.items()}
                             for d, sizes in build_complex(V).orbit_type_ranks().items()},
            )
        return self._respond("sphere-homology", compute)

    def gap(self, group: str, m_max: int) -> Dict[str, Any]:
        def compute():
            n = parse_group(group)
            rows = gap_check(n, m_max)
            return GapReport(group=f"C{2 ** n}", m_max=m_max,
                             passed=all(r["passed"] for r in rows), checks=rows)
        return self._respond("gap", compute)

    # -- slices -----------------------------------------------------------------

    def slice_region(self, g: int, n: int, k: Optional[int] = None,
                     s_max: int = 16, d_max: int = 8) -> Dict[str, Any]:
        """Vanishing range of an n-slice and, when k is given, the E2 region chart."""
        def compute():
            lo, hi = vanishing_range(n, g)
            chart = []
            if k is not None:
                for cell in e2_region_chart(g, k, s_max, d_max):
                    chart.append(RegionCellModel(s=cell.s, stem=cell.stem, basis=cell.labels(),
                                                 sigma_weights=[m.sigma_weight for m in cell.basis]))
            return SliceRegionReport(g=g, n=n, vanishing_range=[lo, hi], k=k, chart=chart)
        return self._respond("slice-region", compute)

    def refine(self, g: int, d: int) -> Dict[str, Any]:
        def compute():
            refinement = refine_orbits(g, d)
            cells = [RefinementCellModel(subgroup=f"C{cell.h}", m=cell.m, multiplicity=mult,
                                         orbit_size=cell.index, cell=cell.label())
                     for cell, mult in refinement.cell_multiplicities()]
            orbits = [RefinedOrbitModel(representative=o.label(), size=o.size, cell=o.cell.label(),
                                        sign_twisted=o.sign_twisted) for o in refinement.orbits]
            return RefinementReport(g=g, degree=2 * d, rank=refinement.rank,
                                    expected_rank=rank_pi_u(g, d), cells=cells, orbits=orbits)
        return self._respond("refine", compute)

    def ss_run(self, g: int, bound: Optional[int] = None) -> Dict[str, Any]:
        bound = self.ss_bound if bound is None else bound

        def compute():
            run = inverted_ss_run(g, bound)
            pages = [PageModel(k=p.k, r=p.r, ranks_after=[p.next_dims[t] for t in range(bound + 1)])
                     for p in run.pages]
            return SSRunReport(g=g, bound=bound, pages=pages, e_infinity_ranks=run.ranks(),
                               e_infinity={str(t): [m.label() for m in monos]
                                           for t, monos in run.e_infinity.items()})
        return self._respond("ss-run", compute)

    # -- formal groups ------------------------------------------------------------

    def fgl(self, table: str, precision: Optional[int] = None) -> Dict[str, Any]:
        """One of the generator tables: h, rbar, haz or tfun."""
        if table not in DEFAULT_FGL_PRECISION:
            return self._error("INVALID_INPUT", f"unknown fgl table {table!r}",
                               "Choose one of h, rbar, haz, tfun.")
        N = DEFAULT_FGL_PRECISION[table] if precision is None else precision
        builder = {
            "h": self._h_table,
            "rbar": self._rbar_table,
            "haz": self._haz_table,
            "tfun": self._tfun_table,
        }[table]
        return self._respond(f"fgl {table}", lambda: builder(N))

    def _h_table(self, N: int) -> GeneratorTable:
        generators = mo_generators(N)
        frobenius = frobenius_h(N, generators.ring)
        rows = [PolyRow(index=j, value=str(p), zero=not p, linear_part=str(p.linear_part()))
                for j, p in sorted(generators.h.items())]
        return GeneratorTable(kind="h", precision=N, entries=rows,
                              checks={"frobenius_recursion": frobenius == generators.h})

    def _rbar_table(self, N: int) -> GeneratorTable:
        rbar = rbar_generators(N)
        target = SparsePolyRing(2, name="F2[alpha]")
        reduced = rbar_geometric_reduction(rbar, target)
        h = mo_generators(N, target).h
        rows = [PolyRow(index=k, value=str(p), zero=not p, linear_part=str(p.linear_part()))
                for k, p in sorted(rbar.rbar.items())]
        return GeneratorTable(kind="rbar", precision=N, entries=rows,
                              checks={"geometric_reduction_is_h": reduced == h})

    def _haz_table(self, N: int) -> ValueTable:
        images = hazewinkel_images(N)
        rows = [ValueRow(name=f"v{n}", value=elem.to_json(), pretty=elem.pretty(),
                         pi_valuation=elem.pi_valuation()) for n, elem in sorted(images.items())]
        return ValueTable(kind="haz", precision=N, entries=rows,
                          checks={"valuations": all(r.pi_valuation == 4 - int(r.name[1:]) for r in rows)})

    def _tfun_table(self, N: int) -> ValueTable:
        table = t_functions(N)
        module = FormalAModule(self.precision)
        checks = {"zeta_composition": module.verify_zeta_composition() == 64}
        if N >= 1:
            checks["formal_sum"] = verify_t_functions(module, table, min(2 ** N, 8)) == 8
        rows = [ValueRow(name=f"t{n}(ζ^{k})", value=elem.to_json(), pretty=elem.pretty(),
                         pi_valuation=elem.pi_valuation())
                for (k, n), elem in sorted(table.items()) if n > 0 and elem.coeff]
        return ValueTable(kind="tfun", precision=N, entries=rows, checks=checks)

    # -- detection ------------------------------------------------------------------

    def detect(self, jmax: Optional[int] = None) -> Dict[str, Any]:
        jmax = self.jmax if jmax is None else jmax
        return self._respond("detect", lambda: DetectionReport(**detection_report(jmax)))

    def cohomology_table(self, m_max: int = 15) -> Dict[str, Any]:
        """H^s(C_8; R_{2m}) for s = 0, 1, 2 and both coefficient choices."""
        def compute():
            rows = []
            for mod2 in (False, True):
                for m in range(m_max + 1):
                    check_periodicity(m, mod2)
                    for s in (0, 1, 2):
                        entry = cohomology_R(s, m, mod2)
                        passed = mod2 or entry.group == predicted_cohomology(s, m)
                        rows.append(CohomologyRow(s=s, m=m, mod2=mod2, group=str(entry.group),
                                                  a_module=entry.a_label, passed=passed))
            return CohomologyReport(m_max=m_max, entries=rows)
        return self._respond("cohomology", compute)

    # -- verification -------------------------------------------------------------------

    def verify_all(self, jobs: Optional[int] = None) -> Dict[str, Any]:
        """Run every acceptance check; results come back in criterion order."""
        jobs = self.jobs if jobs is None else jobs

        def compute():
            criteria = acceptance_checks.CRITERIA
            if jobs > 1:
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    outcomes = list(pool.map(acceptance_checks.run_criterion, [c[0] for c in criteria]))
            else:
                outcomes = [acceptance_checks.run_criterion(c[0]) for c in criteria]
            results = [CriterionResult(**outcome) for outcome in outcomes]
            return VerificationReport(results=results, passed=all(r.passed for r in results))
        return self._respond("verify-all", compute)

    def get_service_status(self) -> Dict[str, Any]:
        return {
            "success": True,
            "data": {
                "jmax": self.jmax,
                "precision": self.precision,
                "ss_bound": self.ss_bound,
                "jobs": self.jobs,
            },
        }


def create_workbench_service(**overrides) -> WorkbenchService:
    """Create a service configured from the environment plus overrides"""
    return WorkbenchService(**overrides)
