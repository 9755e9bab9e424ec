"""One group, one prime, one report.

analyze_group runs every computation the package offers on a single
(group, prime) pair and folds the results into a plain dict that
serializes to stable JSON: dimensions, the two ideal verdicts, shape
flags, and one sub-report per structural theorem check. Checks whose
preconditions fail are reported as inapplicable, never as errors; a
falsified verification lands in consistency_failures and the caller
decides how loudly to fail.
"""

from __future__ import annotations

import time

from .algebra import CenterAlgebra
from .errors import ConsistencyError, InapplicableError, UnsupportedInputError
from .groups import FiniteGroup, prime_factors
from .structure import (check_annihilator_reduction, check_quotient_decomposition,
                        characterize_socle_ideal, decompose_second_derived_quotient,
                        examine_sylow_split, reduce_to_core,
                        split_into_central_factors)

SCHEMA_VERSION = 1


def default_prime(group: FiniteGroup) -> int:
    """Smallest prime dividing |G'| when G' is nontrivial, else smallest
    prime dividing |G| (2 for the trivial group)."""
    der = group.derived_subgroup()
    base = der.size if der.size > 1 else group.order
    facs = prime_factors(base)
    if not facs:
        return 2
    return facs[0]


def _witness_summary(w: dict) -> dict:
    return {
        "seed": w["seed"],
        "multiplier": w["multiplier"],
        "fixer": w["fixer"],
        "commutator_core_order": w["commutator_core_order"],
        "second_derived_order": w["second_derived_order"],
        "support_classes": w["support_classes"],
        "nonzero_coefficients": sum(1 for v in w["vector"] if v),
        "kernel_functional": w["kernel_functional"],
        "checks": w["checks"],
    }


def analyze_group(group: FiniteGroup, p: int, descriptor: str | None = None,
                  theorems: str = "auto") -> dict:
    """Full analysis of one group at one prime. theorems: "none" computes
    only dimensions and the ideal verdicts, "auto" and "all" also run the
    structural checks ("all" lifts the exhaustive-check size cap)."""
    if theorems not in ("none", "auto", "all"):
        raise UnsupportedInputError(f"unknown theorems mode {theorems!r}")
    if p < 2 or prime_factors(p) != [p]:
        raise UnsupportedInputError(f"p = {p} is not a prime")

    t0 = time.perf_counter()
    failures: list[str] = []
    alg = CenterAlgebra(group, p)
    split = examine_sylow_split(group, p)

    try:
        direct, criterion = alg.socle_ideal_verdict()
        ideal = {"direct": direct, "criterion": criterion}
    except ConsistencyError as e:
        failures.append(str(e))
        ideal = {"direct": None, "criterion": None}
        direct = None

    dims = {k: int(v) for k, v in alg.dims().items()}
    sylow_normal = bool(group.is_normal(split.sylow))

    blocks = None
    if sylow_normal:
        try:
            blocks = [[int(r), int(d)]
                      for r, d in alg.socle_coset_decomposition(split.sylow)]
        except ConsistencyError as e:
            if direct and split.reduced:
                failures.append(str(e))

    shape = {k: bool(v) for k, v in split.flags.items()}
    shape["sylow_normal"] = sylow_normal
    shape["reduced"] = bool(split.reduced)
    shape["frobenius_with_derived_kernel"] = bool(
        group.is_frobenius_with_kernel(split.derived))

    radical_basis_match = None
    if split.reduced:
        radical_basis_match = bool(
            alg.radical_span_from_classes() == alg.jacobson_radical())
        if not radical_basis_match:
            failures.append(
                "predicted radical basis does not span the nilradical")

    report = {
        "schema_version": SCHEMA_VERSION,
        "group": {
            "descriptor": descriptor if descriptor is not None else group.name,
            "order": int(group.order),
            "class_count": int(alg.k),
        },
        "p": int(p),
        "dims": dims,
        "socle_blocks": blocks,
        "ideal": ideal,
        "shape": shape,
        "radical_basis_match": radical_basis_match,
        "theorems": {},
        "consistency_failures": failures,
    }

    if theorems == "none" or direct is None:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
        return report

    pattern_cap = 256 if theorems == "auto" else 1 << 30
    th = report["theorems"]

    dec = None
    try:
        dec = decompose_second_derived_quotient(split, alg)
        entry = {
            "n": dec.n,
            "factor_sizes": [int(f.size) for f in dec.factors],
            "multipliers": [None if m is None else int(m)
                            for m in dec.multipliers],
            "fixers": [None if h is None else int(h) for h in dec.fixers],
            "central_image_order": int(dec.central_image.size),
        }
        if direct:
            entry["checks"] = check_quotient_decomposition(split, dec, pattern_cap)
            entry["status"] = "passed"
        else:
            entry["status"] = "computed"
    except InapplicableError as e:
        entry = {"status": "inapplicable", "reason": str(e)}
    except ConsistencyError as e:
        failures.append(str(e))
        entry = {"status": "failed", "reason": str(e)}
    th["quotient_decomposition"] = entry

    try:
        if dec is None:
            raise InapplicableError("no quotient decomposition available")
        ch = characterize_socle_ideal(split, alg, dec)
        th["ideal_characterization"] = {
            "status": "passed",
            "affine_match": ch.affine_match,
            "affine_method": ch.affine_method,
            "has_fixer": ch.has_fixer,
            "derived_camina": ch.derived_camina,
            "predicted": ch.predicted,
            "direct": ch.direct,
            "witness": None if ch.witness is None else _witness_summary(ch.witness),
            "notes": ch.notes,
        }
    except InapplicableError as e:
        th["ideal_characterization"] = {"status": "inapplicable", "reason": str(e)}
    except ConsistencyError as e:
        failures.append(str(e))
        th["ideal_characterization"] = {"status": "failed", "reason": str(e)}

    try:
        if dec is None:
            raise InapplicableError("no quotient decomposition available")
        cs = split_into_central_factors(split, dec, alg)
        th["central_split"] = {
            "status": "passed",
            "seeds": cs.seeds,
            "multipliers": cs.multipliers,
            "component_orders": cs.component_orders,
            "model_method": cs.model_method,
        }
    except InapplicableError as e:
        th["central_split"] = {"status": "inapplicable", "reason": str(e)}
    except ConsistencyError as e:
        failures.append(str(e))
        th["central_split"] = {"status": "failed", "reason": str(e)}

    try:
        if dec is None:
            raise InapplicableError("no quotient decomposition available")
        ar = check_annihilator_reduction(split, dec, alg)
        ar["status"] = "passed"
        th["annihilator_reduction"] = ar
    except InapplicableError as e:
        th["annihilator_reduction"] = {"status": "inapplicable", "reason": str(e)}
    except ConsistencyError as e:
        failures.append(str(e))
        th["annihilator_reduction"] = {"status": "failed", "reason": str(e)}

    try:
        core, steps = reduce_to_core(group, p)
        th["reduction"] = {
            "status": "passed",
            "core_order": int(core.order),
            "steps": steps,
        }
    except InapplicableError as e:
        th["reduction"] = {"status": "inapplicable", "reason": str(e)}
    except ConsistencyError as e:
        failures.append(str(e))
        th["reduction"] = {"status": "failed", "reason": str(e)}

    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    return report
