"""Command line interface: ``gradecert certify | gr | coxeter | corpus``.

Exit codes: 0 all checks pass, 1 some check fails, 2 some check is
inconclusive (and none fails), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from .algcore import GradedAlgebra
from .errors import GradecertError, RadicalUnavailable
from .forcegr import gr_algebra, tilde_gr
from .qhk import (
    FAIL,
    INCONCLUSIVE,
    CertReport,
    WeightPoset,
    certify_koszul,
    certify_q_koszul,
    certify_quasi_hereditary,
    certify_standard_koszul,
    certify_standard_q_koszul,
    check_quadratic,
    check_tight,
    implication_audit,
)
from .specio import algebra_from_spec, algebra_to_spec, dumps, load, order_from_spec

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

CHECKS = ("quasi_hereditary", "koszul", "standard_koszul", "q_koszul", "standard_q_koszul", "tight",
          "quadratic", "audit")


class InputError(Exception):
    pass


def _max_threads() -> int:
    try:
        return max(1, int(os.environ.get("GRADECERT_MAX_THREADS", "1")))
    except ValueError:
        return 1


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=2, default=str) + "\n"


# ---------------------------------------------------------------------------
# certify


def parse_poset(text: str, a: GradedAlgebra) -> WeightPoset:
    """``"1<2,2<3"`` in terms of simple names."""
    names = a.simple_labels()
    rels = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "<" not in part:
            raise InputError(f"poset relation {part!r} should look like a<b")
        lo, hi = (x.strip() for x in part.split("<", 1))
        for x in (lo, hi):
            if x not in names:
                raise InputError(f"unknown simple {x!r}; simples are {names}")
        rels.append((names.index(lo), names.index(hi)))
    try:
        return WeightPoset(len(names), rels, names)
    except ValueError as err:
        raise InputError(str(err)) from err


def _parse_checks(text: str | None) -> list[tuple[str, int | None]]:
    if not text:
        return [(c, None) for c in CHECKS if c != "audit"]
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, _, n = part.partition(":")
        if name not in CHECKS:
            raise InputError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        out.append((name, int(n) if n else None))
    return out


def certify_algebra(a: GradedAlgebra, poset: WeightPoset | None, checks: Sequence[tuple[str, int | None]],
                    deep: bool = False, max_length: int | None = None) -> list[CertReport]:
    if poset is None and a.poset is not None:
        poset = WeightPoset.of_algebra(a)
    needs_poset = {"quasi_hereditary", "standard_koszul", "q_koszul", "standard_q_koszul"}
    if poset is None and any(c in needs_poset for c, _ in checks):
        poset = WeightPoset(len(a.simple_classes()), [], a.simple_labels())
    reports: list[CertReport] = []
    q_cache: dict = {}

    def qh():
        if "q" not in q_cache:
            q_cache["rep"], q_cache["q"] = certify_quasi_hereditary(a, poset, deep)
        return q_cache["rep"], q_cache["q"]

    for name, n in checks:
        if name == "quasi_hereditary":
            reports.append(qh()[0])
        elif name == "koszul":
            reports.append(certify_koszul(a, max_length))
        elif name == "tight":
            reports.append(check_tight(a))
        elif name == "quadratic":
            try:
                reports.append(check_quadratic(a))
            except GradecertError as exc:
                reports.append(CertReport("quadratic", FAIL, {"reason": str(exc)}))
        elif name == "q_koszul":
            q = qh()[1]
            try:
                reports.append(certify_q_koszul(q if q is not None else a, n, poset, max_length))
            except GradecertError as exc:
                reports.append(CertReport("q_koszul" if n is None else f"q_koszul({n})", FAIL,
                                          {"reason": str(exc)}))
        elif name in ("standard_koszul", "standard_q_koszul"):
            rep, q = qh()
            if q is None:
                reports.append(CertReport(name, FAIL, {"quasi_hereditary": rep.witness}))
            elif name == "standard_koszul":
                reports.append(certify_standard_koszul(q, max_length))
            else:
                reports.append(certify_standard_q_koszul(q, max_length))
        elif name == "audit":
            audit = implication_audit(a, poset, max_length, deep)
            reports.append(CertReport("implication_audit", FAIL if audit.violations else "pass",
                                      {"violations": audit.violations} if audit.violations else None,
                                      {k: r.verdict for k, r in audit.reports.items()}))
    return reports


def exit_code(reports: Sequence[CertReport]) -> int:
    verdicts = {r.verdict for r in reports}
    if FAIL in verdicts:
        return EXIT_FAIL
    if INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def report_document(a: GradedAlgebra, reports: Sequence[CertReport], seed: int) -> dict:
    return {"algebra": a.name, "field": a.field.spec_name, "dim": a.dim, "seed": seed,
            "grade_dims": {str(g): a.grades.count(g) for g in sorted(set(a.grades))},
            "reports": [r.to_json() for r in reports]}


def _figures_for_reports(reports: Sequence[CertReport], stem: str, outdir: str) -> list[str]:
    """Write heatmaps into ``outdir``; returns file names relative to it."""
    from . import plotting

    out = []
    for r in reports:
        tables = {}
        if r.property.startswith("q_koszul"):
            tables = {k: v for k, v in r.evidence.items() if isinstance(v, list)}
        elif r.property == "standard_q_koszul":
            for cond in ("a", "b"):
                for k, v in r.evidence.get(cond, {}).items():
                    tables[f"{cond}: {k}"] = v
        if tables:
            path = Path(outdir) / f"{stem}-{r.property}.svg"
            plotting.ext_heatmaps(tables, f"{stem}: {r.property} ({r.verdict})", path)
            out.append(path.name)
    return out


def _load_algebra(path: str, seed: int) -> GradedAlgebra:
    a = algebra_from_spec(load(path))
    try:
        a.primitive_idempotents(seed)
    except GradecertError:
        pass
    return a


def cmd_certify(args) -> int:
    a = _load_algebra(args.file, args.seed)
    poset = parse_poset(args.poset, a) if args.poset is not None else None
    reports = certify_algebra(a, poset, _parse_checks(args.checks), args.deep, args.max_length)
    doc = report_document(a, reports, args.seed)
    if args.figures:
        stem = Path(args.file).stem
        doc["figures"] = _figures_for_reports(reports, stem, args.figures)
        if poset is None and a.poset is not None:
            poset = WeightPoset.of_algebra(a)
        if poset is not None:
            from . import plotting

            nodes = poset.labels
            less = poset.less
            edges = [(nodes[x], nodes[y]) for x, y in sorted(less)
                     if not any((x, z) in less and (z, y) in less for z in range(poset.n))]
            levels = {nodes[v]: sum(1 for u in range(poset.n) if (u, v) in less) for v in range(poset.n)}
            path = Path(args.figures) / f"{stem}-poset.svg"
            plotting.hasse_diagram(nodes, edges, levels, f"{stem}: weight poset", path)
            doc["figures"].append(path.name)
    _emit(_json(doc), args.out)
    return exit_code(reports)


# ---------------------------------------------------------------------------
# gr / tildegr


def cmd_gr(args) -> int:
    doc = load(args.file)
    try:
        if args.mode == "tildegr":
            if doc.get("field") != "Z":
                raise InputError("tildegr needs an order spec (field \"Z\" with a prime)")
            out = tilde_gr(order_from_spec(doc))
        else:
            out = gr_algebra(algebra_from_spec(doc))
    except RadicalUnavailable as exc:
        raise InputError(f"{exc}. The radical is computed from the grading plus the trace form of A_0, "
                         "which needs characteristic 0 or p > dim A_0; add a \"radical\" field to the spec") from exc
    _emit(dumps(algebra_to_spec(out)), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# coxeter


def _gens(text: str | None) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()] if text else []


def _radius(group, given: int | None) -> int:
    if given is not None:
        return given
    if group.affine:
        return 6
    return len(group.datum.positive_roots)


def cmd_coxeter(args) -> int:
    from . import weyl

    try:
        group = weyl.CoxeterGroup(args.type)
    except ValueError as err:
        raise InputError(str(err)) from err
    sub = args.sub
    lines: list[str] = []
    if sub == "weights":
        wp = weyl.weight_predicates(group.datum, args.p)
        if args.jantzen is not None:
            lines.append(str(wp.in_jantzen_region(_weight(args.jantzen))).lower())
        if args.regular is not None:
            lines.append(str(wp.is_p_regular(_weight(args.regular))).lower())
        if args.gamma is not None:
            lines += [",".join(map(str, lam)) for lam in wp.gamma_res_reg_members(args.gamma)]
        if not lines:
            lines = [f"coxeter_number {wp.coxeter_number}", f"ell {wp.ell_of_p}"]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if sub == "psi":
        x = group.from_word(args.x)
        _emit(weyl.psi(group, x, _gens(args.mu), _gens(args.nu)).word + "\n", args.out)
        return EXIT_OK
    b = weyl.ball(group, _radius(group, args.radius))
    figure = None
    if sub == "ball":
        lines = [f"{x.length} {x.word}" for x in b.elements]
        if args.edges:
            lines += [f"{x.word} < {w.word}" for x, w in b.edges()]
        figure = ("hasse", [x.word for x in b.elements], [(x.word, w.word) for x, w in b.edges()],
                  {x.word: x.length for x in b.elements})
    elif sub == "dcosets":
        lines = ["min_rep,max_rep,regular,size,in_ball"]
        for c in weyl.regular_double_cosets(b, _gens(args.J1), _gens(args.J2)):
            lines.append(f"{c.min_rep.word},{c.max_rep.word},{str(c.regular).lower()},{c.size},"
                         f"{str(c.in_ball).lower()}")
    elif sub == "posets":
        p = weyl.parabolic_singular_posets(b, _gens(args.mu), _gens(args.nu), args.sign)
        if args.ideal:
            p = weyl.poset_ideal(p, group.from_word(args.ideal))
        lines = [f"# {p.label} order={'opposite Bruhat' if p.opposite else 'Bruhat'}"]
        lines += [f"node {x.word}" for x in p.elements]
        es = p.edges()
        lines += [f"{x.word} < {y.word}" for x, y in es]
        depth = {x: sum(1 for y in p.elements if y != x and p.le(y, x)) for x in p.elements}
        figure = ("hasse", [x.word for x in p.elements], [(x.word, y.word) for x, y in es],
                  {x.word: depth[x] for x in p.elements})
    elif sub == "kl":
        table = weyl.kl_polynomials(b)
        _emit(table.to_csv(), args.out)
        if args.figures:
            from . import plotting

            order = [x.word for x in sorted(b.elements, key=lambda e: (e.length, e.word))]
            vals = {(x.word, w.word): p for (x, w), p in table.entries.items()}
            plotting.kl_heatmap(order, vals, f"KL polynomials P(1), {group.name} radius {b.radius}",
                                Path(args.figures) / f"kl-{group.name}-{b.radius}.svg")
        return EXIT_OK
    if figure is not None and args.figures:
        from . import plotting

        _, nodes, edges, levels = figure
        plotting.hasse_diagram(nodes, edges, levels, f"{group.name} {sub}",
                               Path(args.figures) / f"{sub}-{group.name}-{b.radius}.svg")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _weight(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as err:
        raise InputError(f"weight {text!r} should be comma-separated integers") from err


# ---------------------------------------------------------------------------
# corpus


def run_corpus(outdir: str | Path, seed: int = 0, max_length: int | None = None,
               figures: str | None = None) -> dict:
    """Audit every corpus algebra; one report per algebra plus a summary, all deterministic."""
    from .corpus import corpus

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    entries = corpus()

    def one(e):
        a = e.algebra()
        a.primitive_idempotents(seed)
        reps = certify_algebra(a, None, [(c, None) for c in CHECKS], max_length=max_length)
        doc = report_document(a, reps, seed)
        if figures:
            doc["figures"] = _figures_for_reports(reps, e.name, figures)
        (outdir / f"{e.name}.json").write_text(_json(doc))
        return e.name, exit_code(reps), {r.property: r.verdict for r in reps}

    with ThreadPoolExecutor(max_workers=_max_threads()) as pool:
        results = list(pool.map(one, entries))
    summary = {"seed": seed, "algebras": {name: verdicts for name, _, verdicts in sorted(results)}}
    (outdir / "summary.json").write_text(_json(summary))
    return summary


def cmd_corpus(args) -> int:
    summary = run_corpus(args.out, args.seed, args.max_length, args.figures)
    bugs = [n for n, v in summary["algebras"].items() if v.get("implication_audit") == FAIL]
    sys.stdout.write(f"{len(summary['algebras'])} algebras audited, {len(bugs)} with implication violations\n")
    return EXIT_FAIL if bugs else EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 3), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gradecert", description="Certify graded algebra properties exactly.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", help="run certifiers on an algebra spec")
    c.add_argument("file")
    c.add_argument("--poset", help="weight poset as 'a<b,b<c' over simple names")
    c.add_argument("--checks", help=f"comma list from {', '.join(CHECKS)}; q_koszul:N for N-Q-Koszul")
    c.add_argument("--deep", action="store_true", help="also verify the heredity chain")
    c.add_argument("--max-length", type=int, default=None)
    c.add_argument("--out")
    c.add_argument("--figures", metavar="DIR", help="write ext heatmaps and the poset diagram here")
    c.set_defaults(func=cmd_certify)

    g = sub.add_parser("gr", help="forced gradings gr A or tilde-gr of an order")
    g.add_argument("file")
    g.add_argument("--mode", choices=("gr", "tildegr"), default="gr")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gr)

    x = sub.add_parser("coxeter", help="Weyl group combinatorics")
    x.add_argument("sub", choices=("ball", "dcosets", "psi", "posets", "kl", "weights"))
    x.add_argument("type", help="Cartan type such as A2, G2 or A1~ (affine)")
    x.add_argument("--radius", type=int)
    x.add_argument("--J1")
    x.add_argument("--J2")
    x.add_argument("--mu")
    x.add_argument("--nu")
    x.add_argument("--x")
    x.add_argument("--sign", choices=("-", "+"), default="-")
    x.add_argument("--ideal", help="restrict the poset to the ideal below this word")
    x.add_argument("--edges", action="store_true")
    x.add_argument("--p", type=int, default=5)
    x.add_argument("--jantzen", help="weight (comma-separated coordinates) to test")
    x.add_argument("--regular", help="weight to test for p-regularity")
    x.add_argument("--gamma", type=int, help="list the res-reg ideal up to this coordinate bound")
    x.add_argument("--out")
    x.add_argument("--figures", metavar="DIR")
    x.set_defaults(func=cmd_coxeter)

    k = sub.add_parser("corpus", help="audit the built-in corpus")
    k.add_argument("--out", default="corpus-reports")
    k.add_argument("--max-length", type=int, default=None)
    k.add_argument("--figures", metavar="DIR")
    k.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GradecertError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
