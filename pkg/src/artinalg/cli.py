"""Command-line surface.

Commands: ``report``, ``reproduce-paper``, ``scan``, ``decompose``,
``summand``, ``fibre-product``.  Exit codes: 0 ok, 1 input error,
2 expectation mismatch.
"""

from __future__ import annotations

import json
import re
import sys
from dataclasses import replace
from itertools import combinations

import click

from .algebra import (
    AlgebraBuildError, FiniteLocalAlgebra, build_algebra, fibre_product,
    gorenstein_test, hypersurface_test, socle,
)
from .corpus import CORPUS, entry_by_id, run_corpus, run_entry
from .koszul import algebra_profile
from .modules import canonical_module, maximal_ideal_module, resolution_of_k
from .presentation import ParseError, parse_presentation
from .sampler import (
    ScanConfig, ScanConfigError, _parse_field_text, config_from_dict,
    load_config, sample_algebras,
)
from .structure import (
    DEFAULT_SEED, UnsupportedFieldError, burch_depth_zero_test, decompose,
    exceptional_test, golod_check, simple_summand_test, star_property_scan,
    summand_test, tachikawa_probe, verify_golod_decomposition,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2


def _fail(message: str, code: int = EXIT_INPUT):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_algebra(path: str, field: str | None) -> FiniteLocalAlgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(str(exc))
    try:
        pres = parse_presentation(text)
        if field is not None:
            pres = replace(pres, field=_parse_field_text(field))
        return build_algebra(pres)
    except (ParseError, ScanConfigError, AlgebraBuildError, ValueError) as exc:
        _fail(f"{path}: {exc}")


def _emit(payload: dict, as_json: bool, out: str | None, human: str):
    text = json.dumps(payload, indent=2, sort_keys=True) if as_json else human
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            _fail(str(exc))
    else:
        click.echo(text)


def _kv_table(rows) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


_common = [
    click.option("--field", "field", default=None,
                 help="Override the field in the ring file (Q or F<p>)."),
    click.option("--precision", "precision", type=int, default=None,
                 help="Homological degree bound."),
    click.option("--seed", "seed", type=int, default=DEFAULT_SEED,
                 show_default=True, help="Seed for randomized checks."),
    click.option("--json", "as_json", is_flag=True, help="Emit JSON."),
    click.option("--out", "out", type=click.Path(), default=None,
                 help="Write output to PATH instead of stdout."),
]


def common_options(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Exact homological calculator for Artinian local algebras."""


# -- report ------------------------------------------------------------

@main.command()
@click.argument("ring_file", type=click.Path())
@click.option("--betti", "betti_n", type=int, default=None,
              help="Betti numbers of k up to degree N.")
@click.option("--koszul", is_flag=True, help="Koszul homology profile.")
@click.option("--golod", is_flag=True, help="Golod detection by Betti slacks.")
@click.option("--star-scan", "star_scan", is_flag=True,
              help="Scan syzygy pairs for the direct-summand property.")
@click.option("--burch", is_flag=True, help="Depth-zero Burch criterion.")
@click.option("--exceptional", is_flag=True,
              help="No syzygy of k has a simple summand up to the bound.")
@click.option("--tachikawa", is_flag=True,
              help="Ext(K_R, R) vanishing probe.")
@click.option("--decompose-verify", "decompose_verify", is_flag=True,
              help="Check the Golod syzygy decomposition numerically.")
@common_options
def report(ring_file, betti_n, koszul, golod, star_scan, burch, exceptional,
           tachikawa, decompose_verify, field, precision, seed, as_json, out):
    """Analyze one ring file and write a report."""
    A = _load_algebra(ring_file, field)
    bound = precision if precision is not None else A.e + 4
    selected = any([betti_n is not None, koszul, golod, star_scan, burch,
                    exceptional, tachikawa, decompose_verify])
    if not selected:
        betti_n, koszul, golod, burch = bound, True, True, True
        exceptional = True
    payload = {"ring": A.presentation.canonical_text(), "field": str(A.field),
               "e": A.e, "dim": A.dim,
               "hilbert": list(A.hilbert.dims),
               "gorenstein": gorenstein_test(A),
               "hypersurface": hypersurface_test(A),
               "socle_dim": len(socle(A)), "seed": seed}
    if betti_n is not None:
        payload["betti"] = list(resolution_of_k(A, betti_n).betti[:betti_n + 1])
    if koszul:
        payload["koszul_profile"] = list(algebra_profile(A).h)
    if golod:
        payload["golod"] = golod_check(A, bound).to_dict()
    if star_scan:
        payload["star_pairs"] = [list(p) for p in
                                 star_property_scan(A, min(bound, 4), seed=seed)]
    if burch:
        payload["burch"] = burch_depth_zero_test(A)
    if exceptional:
        payload["exceptional"] = exceptional_test(A, min(bound, 4))
    if tachikawa:
        payload["tachikawa"] = tachikawa_probe(A, bound, seed=seed).to_dict()
    if decompose_verify:
        rep = verify_golod_decomposition(A, min(bound, 2), seed=seed)
        payload["golod_decomposition"] = rep.to_dict()
    rows = [(k, json.dumps(v) if isinstance(v, (list, dict)) else str(v))
            for k, v in payload.items()]
    _emit(payload, as_json, out, _kv_table(rows))
    sys.exit(EXIT_OK)


# -- reproduce-paper ---------------------------------------------------

@main.command("reproduce-paper")
@click.option("--entry", "entry_id", default=None,
              help="Run a single corpus entry by id.")
@common_options
def reproduce_paper(entry_id, field, precision, seed, as_json, out):
    """Re-run every bundled example against its recorded expectations."""
    fs = _parse_field_text(field) if field else None
    try:
        if entry_id is not None:
            results = [run_entry(entry_by_id(entry_id), fs, seed)]
        else:
            results = run_corpus(fs, seed)
    except KeyError as exc:
        _fail(str(exc))
    lines = []
    for res in results:
        for chk in res["checks"]:
            mark = "PASS" if chk["ok"] else "FAIL"
            lines.append(f"{res['id']:4} {chk['name']:34} "
                         f"expected {chk['expected']!s:6} got {chk['got']!s:6} {mark}")
    ok = all(res["ok"] for res in results)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    _emit({"entries": results, "ok": ok}, as_json, out, "\n".join(lines))
    sys.exit(EXIT_OK if ok else EXIT_MISMATCH)


# -- scan --------------------------------------------------------------

_WHERE_TOKEN = re.compile(r"\s*(&&|\|\||!|\(|\)|[A-Za-z_][A-Za-z0-9_]*)")


def _compile_where(expr: str):
    pos, py = 0, []
    names = set()
    while pos < len(expr):
        m = _WHERE_TOKEN.match(expr, pos)
        if not m:
            raise ScanConfigError(f"bad filter near {expr[pos:]!r}")
        tok = m.group(1)
        pos = m.end()
        if tok == "&&":
            py.append("and")
        elif tok == "||":
            py.append("or")
        elif tok == "!":
            py.append("not")
        elif tok in "()":
            py.append(tok)
        else:
            names.add(tok)
            py.append(f"bool(rec.get({tok!r}))")
    code = compile(" ".join(py), "<where>", "eval")
    env = {"__builtins__": {}, "bool": bool}
    return lambda rec: bool(eval(code, env, {"rec": rec}))


def _fibre_detect(A: FiniteLocalAlgebra) -> bool:
    """Nontrivial fibre-product shape: the variables split into two
    nonempty groups with every cross product equal to zero."""
    e = A.e
    if e < 2 or e > 8:
        return False
    def cross_zero(i, j):
        mono = [0] * e
        mono[i] += 1
        mono[j] += 1
        return A.monomial_action(tuple(mono)).column(0) == {}
    for r in range(1, e // 2 + 1):
        for left in combinations(range(e), r):
            rest = [j for j in range(e) if j not in left]
            if all(cross_zero(i, j) for i in left for j in rest):
                return True
    return False


def _scan_record(index, attempt_seed, A, config, bound) -> dict:
    rec = {"index": index, "seed": attempt_seed,
           "ring": A.presentation.canonical_text(),
           "e": A.e, "dim": A.dim, "hilbert": list(A.hilbert.dims)}
    checks = set(config.checks)
    if "betti" in checks:
        rec["betti"] = list(resolution_of_k(A, bound).betti[:bound + 1])
    if "koszul" in checks:
        rec["koszul_profile"] = list(algebra_profile(A).h)
    if "golod" in checks:
        grep = golod_check(A, bound)
        rec["golod"] = grep.is_golod_to_precision
        rec["golod_first_failure"] = grep.first_failure
    if "star" in checks:
        # a > 0 pairs need End(-) of syzygy modules; cap their size so one
        # large sample cannot stall the stream (a = 0 pairs always run).
        pairs = star_property_scan(A, min(bound, 4), seed=config.seed,
                                   max_pair_dim=80)
        rec["star_pairs"] = [list(p) for p in pairs]
        rec["star"] = bool(pairs)
    if "burch" in checks:
        rec["burch"] = burch_depth_zero_test(A)
    if "exceptional" in checks:
        rec["exceptional"] = exceptional_test(A, min(bound, 4))
    if "fibre" in checks:
        rec["fibre"] = _fibre_detect(A)
    return rec


@main.command()
@click.argument("config_file", type=click.Path(), required=False)
@click.option("--e", "e", type=int, default=None)
@click.option("--max-degree", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--max-dim", type=int, default=None)
@click.option("--gens", nargs=2, type=int, default=None,
              help="Extra-generator count range LO HI.")
@click.option("--checks", default=None,
              help="Comma-separated subset of betti,koszul,golod,star,burch,exceptional,fibre.")
@click.option("--where", "where", default=None,
              help="Boolean filter over record fields, e.g. 'star && !golod'.")
@click.option("--ordered/--no-ordered", default=True, show_default=True,
              help="Emit records in input order (always deterministic).")
@common_options
def scan(config_file, e, max_degree, samples, max_dim, gens, checks, where,
         ordered, field, precision, seed, as_json, out):
    """Sample random monomial algebras and stream one JSON record each."""
    data = {}
    try:
        if config_file is not None:
            data = load_config(config_file).to_dict()
            data["extra_gens"] = data.pop("extra_gens")
        if field is not None:
            data["field"] = field
        if e is not None:
            data["e"] = e
        if max_degree is not None:
            data["max_degree"] = max_degree
        if samples is not None:
            data["samples"] = samples
        if max_dim is not None:
            data["max_dim"] = max_dim
        if gens is not None:
            data["extra_gens"] = list(gens)
        if checks is not None:
            data["checks"] = [c.strip() for c in checks.split(",") if c.strip()]
        if seed is not None:
            data.setdefault("seed", seed)
            if seed != DEFAULT_SEED:
                data["seed"] = seed
        if "e" not in data:
            raise ScanConfigError("e is required (config file or --e)")
        config = config_from_dict(data)
        pred = _compile_where(where) if where else None
    except ScanConfigError as exc:
        _fail(str(exc))
    bound = precision if precision is not None else config.e + 4
    sink = open(out, "w", encoding="utf-8") if out else sys.stdout
    try:
        for index, attempt_seed, A in sample_algebras(config):
            rec = _scan_record(index, attempt_seed, A, config, bound)
            if pred is not None and not pred(rec):
                continue
            sink.write(json.dumps(rec, sort_keys=True) + "\n")
        sink.flush()
    finally:
        if out:
            sink.close()
    sys.exit(EXIT_OK)


# -- decompose ---------------------------------------------------------

@main.command("decompose")
@click.argument("ring_file", type=click.Path())
@click.option("--syzygy", "syzygy_n", type=int, default=None,
              help="Decompose syz_N(k).")
@click.option("--canonical", is_flag=True, help="Decompose K_R.")
@click.option("--maximal-ideal", "maximal", is_flag=True, help="Decompose m.")
@common_options
def decompose_cmd(ring_file, syzygy_n, canonical, maximal, field, precision,
                  seed, as_json, out):
    """Decompose a module into indecomposable summands (prime field only)."""
    A = _load_algebra(ring_file, field)
    if sum([syzygy_n is not None, canonical, maximal]) > 1:
        _fail("choose one of --syzygy, --canonical, --maximal-ideal")
    if canonical:
        M, label = canonical_module(A), "K_R"
    elif maximal:
        M, label = maximal_ideal_module(A), "m"
    else:
        n = syzygy_n if syzygy_n is not None else 1
        if n < 0:
            _fail("--syzygy must be nonnegative")
        M, label = resolution_of_k(A, max(n, 1)).syzygy(n), f"syz_{n}(k)"
    try:
        rep = decompose(M, seed=seed)
    except UnsupportedFieldError as exc:
        _fail(str(exc))
    verified = rep.verify(M)
    payload = {"module": label, "dim": M.dim, "seed": rep.seed,
               "monte_carlo": rep.monte_carlo, "verified": verified,
               "factors": [{"dim": piece.dim, "multiplicity": mult}
                           for piece, mult in rep.factors]}
    human = _kv_table([
        ("module", label), ("dim", str(M.dim)),
        ("factors", " + ".join(f"{m} x (dim {p.dim})" for p, m in rep.factors)),
        ("verified", str(verified)), ("seed", str(rep.seed)),
    ])
    _emit(payload, as_json, out, human)
    sys.exit(EXIT_OK if verified else EXIT_MISMATCH)


# -- summand -----------------------------------------------------------

@main.command("summand")
@click.argument("ring_file", type=click.Path())
@click.option("--syzygy", "pair", nargs=2, type=int, required=True,
              metavar="A B", help="Test syz_A(k) as a summand of syz_B(k).")
@click.option("--expect", type=click.Choice(["yes", "no"]), default=None,
              help="Exit 2 if the verdict differs.")
@common_options
def summand_cmd(ring_file, pair, expect, field, precision, seed, as_json, out):
    """Decide whether one syzygy of k is a direct summand of another."""
    a, b = pair
    if a < 0 or b < 0:
        _fail("syzygy indices must be nonnegative")
    A = _load_algebra(ring_file, field)
    res = resolution_of_k(A, max(a, b, 1))
    Sb = res.syzygy(b)
    try:
        if a == 0:
            cert = simple_summand_test(Sb)
        else:
            cert = summand_test(res.syzygy(a), Sb, seed=seed)
    except UnsupportedFieldError as exc:
        _fail(str(exc))
    payload = {"pair": [a, b], "ok": cert.ok, "refutation": cert.refutation,
               "trials": cert.trials, "seed": cert.seed,
               "dims": [res.syzygy(a).dim, Sb.dim]}
    human = _kv_table([
        ("pair", f"syz_{a}(k) | syz_{b}(k)"),
        ("verdict", "summand" if cert.ok else f"refuted ({cert.refutation})"),
        ("trials", str(cert.trials)), ("seed", str(cert.seed)),
    ])
    _emit(payload, as_json, out, human)
    if expect is not None and (expect == "yes") != cert.ok:
        sys.exit(EXIT_MISMATCH)
    sys.exit(EXIT_OK)


# -- fibre-product -----------------------------------------------------

@main.command("fibre-product")
@click.argument("s_file", type=click.Path())
@click.argument("t_file", type=click.Path())
@click.option("-o", "--out", "out", type=click.Path(), default=None,
              help="Write the product ring file to PATH.")
@click.option("--field", "field", default=None)
@click.option("--json", "as_json", is_flag=True)
def fibre_product_cmd(s_file, t_file, out, field, as_json):
    """Form the fibre product of two ring files over their residue field."""
    S = _load_algebra(s_file, field)
    T = _load_algebra(t_file, field)
    try:
        R = fibre_product(S, T)
    except AlgebraBuildError as exc:
        _fail(str(exc))
    text = R.presentation.canonical_text()
    beta1 = resolution_of_k(R, 1).betti[1]
    payload = {"ring": text, "e": R.e, "dim": R.dim, "beta1": beta1,
               "e_S": S.e, "e_T": T.e}
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            _fail(str(exc))
        summary = _kv_table([("wrote", out), ("e", str(R.e)),
                             ("dim", str(R.dim)), ("beta_1(k)", str(beta1))])
        click.echo(json.dumps(payload, sort_keys=True) if as_json else summary)
    else:
        click.echo(json.dumps(payload, sort_keys=True) if as_json else text)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
