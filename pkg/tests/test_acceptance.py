"""Acceptance suite.

Nine end-to-end criteria, each printing one summary line (visible with
pytest -s, or in captured output otherwise).  Every numeric expectation is
exact; there are no tolerances anywhere.
"""

import io
import json
import time
from pathlib import Path

import pytest

from towergrowth import (
    DistinguishedFactor,
    ElementaryModule,
    GenericDescent,
    IntPoly,
    LPower,
    SpecialDescent,
    builtin_scenario,
    codescent_defect,
    default_level_range,
    defect_bound,
    enumeration_oracle,
    fit_parameters,
    full_span_scenario,
    mirror_check,
    mirror_context_for_full_span,
    order_sequence,
    order_valuation,
    parse_run,
    predict_parameters,
    replicated_full_span_scenario,
    serialize_run,
    structural_invariants,
    validate_descent,
)
from towergrowth.cli import run_command
from towergrowth.fitting import UltimatelyConstant
from towergrowth.scenario_io import RunSpec
from towergrowth.scenarios import MirrorSide

GOLDEN = Path(__file__).parent / "golden"


def _report(number: int, description: str, ok: bool) -> None:
    print(f"criterion {number} ({description}): {'PASS' if ok else 'FAIL'}")


def _fit_scenario(scenario, n_min=None, n_max=None):
    lo = scenario.n_min if n_min is None else n_min
    hi = scenario.n_max if n_max is None else n_max
    seq = order_sequence(scenario.module, scenario.descent, lo, hi)
    return fit_parameters(seq)


class TestAcceptance:
    def test_criterion_1_full_span_growth(self):
        ok = False
        try:
            start = time.perf_counter()
            for level in (0, 1, 2):
                fit = _fit_scenario(full_span_scenario(level), n_max=6)
                p = fit.params
                assert (p.rho, p.mu, p.lam_tilde) == (1, 0, -(2**level))
            elapsed = time.perf_counter() - start
            assert elapsed < 5.0
            ok = True
        finally:
            _report(1, "full-span growth at l=2, levels 0-2", ok)

    def test_criterion_2_replicated_full_span_growth(self):
        ok = False
        try:
            start = time.perf_counter()
            expect = {(3, 0): (1, 0, -1), (3, 1): (1, 0, -3), (5, 0): (2, 0, -2)}
            for (ell, level), triple in expect.items():
                fit = _fit_scenario(replicated_full_span_scenario(ell, level))
                p = fit.params
                assert (p.rho, p.mu, p.lam_tilde) == triple
            elapsed = time.perf_counter() - start
            assert elapsed < 30.0
            ok = True
        finally:
            _report(2, "replicated full-span growth at odd primes", ok)

    def test_criterion_3_closed_forms(self):
        ok = False
        try:
            lam = ElementaryModule(prime=2, free_rank=1)
            lpow = ElementaryModule(prime=2, free_rank=0, torsion_factors=(LPower(1),))
            linear = ElementaryModule(
                prime=2,
                free_rank=0,
                torsion_factors=(DistinguishedFactor(IntPoly((0, 1))),),
            )
            trivial = GenericDescent(0, ())
            for n in range(1, 7):
                assert order_valuation(lpow, trivial, n) == 2**n
                assert order_valuation(linear, trivial, n) == n
                assert order_valuation(lam, trivial, n) == n * 2**n
                assert order_valuation(lam, SpecialDescent(), n) == n * 2**n + n
            # the residual must not merely be small: it is identically zero
            for module, descent in (
                (lpow, trivial),
                (linear, trivial),
                (lam, trivial),
                (lam, SpecialDescent()),
            ):
                fit = fit_parameters(order_sequence(module, descent, 1, 6))
                assert isinstance(fit.classification, UltimatelyConstant)
                assert set(fit.residuals) == {fit.params.nu}
            ok = True
        finally:
            _report(3, "closed forms for the four basic modules", ok)

    def test_criterion_4_randomized_corpus_defect_bounds(self, generic_corpus):
        ok = False
        try:
            start = time.perf_counter()
            assert len(generic_corpus) >= 100
            for case in generic_corpus:
                assert validate_descent(case.module, case.descent).valid
                kappa = codescent_defect(case.module, case.descent)
                rho = case.module.free_rank
                ell = case.module.prime.value
                assert 0 <= kappa <= defect_bound(case.module, case.descent)
                if rho == 0 or not case.descent.generators:
                    assert kappa == 0
                if case.expected_defect is not None:
                    assert kappa == case.expected_defect
                predicted = predict_parameters(case.module, case.descent)
                assert predicted.lam_tilde >= -rho * ell**case.descent.level
            elapsed = time.perf_counter() - start
            assert elapsed < 120.0
            ok = True
        finally:
            _report(4, "randomized corpus: validity and defect bounds", ok)

    def test_criterion_5_randomized_corpus_fits(self, generic_corpus):
        ok = False
        try:
            start = time.perf_counter()
            for case in generic_corpus:
                inv = structural_invariants(case.module)
                kappa = codescent_defect(case.module, case.descent)
                lo, hi = default_level_range(
                    case.module.prime.value, case.descent.level
                )
                seq = order_sequence(case.module, case.descent, lo, hi)
                fit = fit_parameters(seq)  # ambiguity would raise and fail
                p = fit.params
                assert (p.rho, p.mu, p.lam_tilde) == (
                    inv.free_rank,
                    inv.mu,
                    inv.lam - kappa,
                )
                assert fit.spread <= fit.spread_bound
            elapsed = time.perf_counter() - start
            assert elapsed < 120.0
            ok = True
        finally:
            _report(5, "randomized corpus: fitted parameters match", ok)

    def test_criterion_6_enumeration_agreement(self, generic_corpus):
        ok = False
        try:
            start = time.perf_counter()
            checked = 0
            for case in generic_corpus:
                dim = case.module.coordinate_count
                if dim == 0:
                    continue
                lo = case.descent.level + 1
                for n in (lo, lo + 1):
                    if dim * n * 2**n > 20:  # log2 of the ambient size
                        continue
                    expected = order_valuation(case.module, case.descent, n)
                    got = enumeration_oracle(
                        case.module, case.descent, n, element_cap=2**20
                    )
                    assert got == expected
                    checked += 1
            assert checked >= 50
            elapsed = time.perf_counter() - start
            assert elapsed < 60.0
            ok = True
        finally:
            _report(6, "brute-force enumeration agrees with the fast path", ok)

    def test_criterion_7_shift_law(self):
        ok = False
        try:
            lam = ElementaryModule(prime=2, free_rank=1)
            mixed = ElementaryModule(
                prime=2, free_rank=1, torsion_factors=(LPower(1),)
            )
            cases = [
                (lam, GenericDescent(0, ()), 0),
                (lam, SpecialDescent(), 1),
                (mixed, GenericDescent(0, ()), 0),
                (mixed, SpecialDescent(), 1),
            ]
            for module, descent, special_extra in cases:
                rho = module.free_rank
                for n in (2, 3, 4):
                    base = order_valuation(module, descent, n, k=0)
                    for k in (-1, 1, 2):
                        got = order_valuation(module, descent, n, k=k)
                        assert got - base == rho * k * 2**n + special_extra * k
            ok = True
        finally:
            _report(7, "coefficient shift law", ok)

    def test_criterion_8_mirror_identities(self):
        ok = False
        try:
            import dataclasses

            for level in (0, 1, 2, 3):
                left, right = mirror_context_for_full_span(level)
                assert mirror_check(left, right).passed

            def perturbed(side: MirrorSide, field: str) -> MirrorSide:
                if field in ("rho", "mu", "lam_tilde"):
                    params = dataclasses.replace(
                        side.params, **{field: getattr(side.params, field) + 1}
                    )
                    return dataclasses.replace(side, params=params)
                return dataclasses.replace(
                    side, **{field: getattr(side, field) + 1}
                )

            fields = ("rho", "mu", "lam_tilde", "finite_defect", "stable_rank")
            for level in (0, 2):
                for which in (0, 1):
                    for field in fields:
                        sides = list(mirror_context_for_full_span(level))
                        sides[which] = perturbed(sides[which], field)
                        assert not mirror_check(*sides).passed, (level, which, field)
            ok = True
        finally:
            _report(8, "mirror identities pass and detect perturbations", ok)

    def test_criterion_9_cli_round_trips_and_exit_codes(self, tmp_path):
        ok = False
        try:
            mixed = str(GOLDEN / "mixed.run")
            special = str(GOLDEN / "special.run")
            pairs = [
                (("orders", mixed), "orders_mixed.txt"),
                (("orders", "--json", mixed), "orders_mixed.json"),
                (("invariants", mixed), "invariants_mixed.txt"),
                (("invariants", "--json", mixed), "invariants_mixed.json"),
                (("fit", special), "fit_special.txt"),
                (("fit", "--json", special), "fit_special.json"),
                (("verify", special), "verify_special.txt"),
                (("verify", "--json", special), "verify_special.json"),
                (("scenario", "prop14:e=1"), "scenario_prop14.txt"),
                (("scenario", "--json", "prop14:e=1"), "scenario_prop14.json"),
                (("mirror", "--level", "2"), "mirror_level2.txt"),
                (("mirror", "--json", "--level", "2"), "mirror_level2.json"),
            ]
            for argv, name in pairs:
                out = io.StringIO()
                assert run_command(list(argv), out, io.StringIO()) == 0
                assert out.getvalue() == (GOLDEN / name).read_text()
                if "--json" in argv:
                    assert json.loads(out.getvalue())["schema"] == "towergrowth/1"

            # serialization round-trip on the fixtures and on every
            # built-in scenario
            for path in (mixed, special):
                spec = parse_run(Path(path).read_text())
                assert parse_run(serialize_run(spec)) == spec
            for name in (
                "prop14:e=0",
                "prop14:e=1",
                "prop14:e=2",
                "prop15:l=3,e=0",
                "prop15:l=3,e=1",
                "prop15:l=5,e=0",
                "special-demo",
                "trivial-demo",
            ):
                s = builtin_scenario(name)
                spec = RunSpec(
                    module=s.module,
                    descent=s.descent,
                    n_min=s.n_min,
                    n_max=s.n_max,
                    shift=s.shift,
                )
                assert parse_run(serialize_run(spec)) == spec

            # one exit code of each kind
            sink = io.StringIO()
            assert run_command(["verify", special], sink, sink) == 0
            assert (
                run_command(
                    [
                        "mirror",
                        "--left", "rho=1,mu=0,lam_tilde=-4,defect=0,stable=1",
                        "--right", "rho=1,mu=0,lam_tilde=3,defect=2,stable=8",
                    ],
                    sink,
                    sink,
                )
                == 1
            )
            bad = tmp_path / "bad.run"
            bad.write_text("[prime]\nl = 6\n")
            assert run_command(["orders", str(bad)], sink, sink) == 2
            assert run_command(["orders", mixed, "--cap", "4"], sink, sink) == 3
            ok = True
        finally:
            _report(9, "CLI golden outputs, round-trips, exit codes", ok)
