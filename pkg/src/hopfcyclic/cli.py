"""Command-line front end: parse structure documents, dispatch the exact
computations, and emit verification certificates and homology tables.

Subcommands
-----------
verify    axiom suites: ``verify hopf DOC``, ``verify crossed DOC``,
          ``verify cyclic H M``, ``verify galois DOC``
hh / hc   Hochschild / cyclic homology of a Hopf algebra with crossed
          coefficients: ``hh H M``, ``hc H M --method both``
galois    certify a Hopf-Galois extension and the slot-product comparison,
          with cyclic homology computed on both sides
burghelea conjugacy-class folding for a finite group algebra against the
          direct computation
qtorus    quantum-torus degree lattice and homology point counts

Inputs are builtin names (groups ``z2 z3 z4 z2xz2 s3 d4``, modules
``adjoint coadjoint trivial sign modular_pair:<g>``, extensions
``s3_over_a3 kz4_over_kz2 twisted_klein``), file paths, or inline JSON.
Reports carry a ``schema`` version, sha256 hashes of every input, one entry
per check with a witness on failure, and the homology tables; timings live
in a segregated block so the rest of the report is byte-stable for fixed
input and configuration.  Exit codes: 0 all checks pass, 1 a mathematical
check failed, 2 input or configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import sys
import time
from pathlib import Path

from .crossed import (
    adjoint,
    coadjoint,
    crossed_from_json,
    crossed_to_json,
    modular_pair_module,
    one_dimensional,
    trivial_module,
    verify_crossed,
    verify_modular,
)
from .cyclic import (
    CharacteristicError,
    build_cyclic,
    burghelea_finite,
    hc,
    hc_bicomplex,
    hc_connes,
    hochschild,
    verify_cyclic_identities,
)
from .galois import (
    AlgebraData,
    crossed_product,
    galois_check,
    lambda_iso,
    strongly_graded,
    twisted_group_algebra,
    underlying_algebra,
    verify_comodule_algebra,
)
from .hopf import (
    FiniteGroup,
    group_algebra,
    group_from_json,
    group_to_json,
    hopf_from_json,
    hopf_to_json,
    verify_hopf,
)
from .linalg import QQ, PrimeField, SparseMatrix, TruncationError
from .qtorus import TorusCocycle, box_check, degree_lattice, torus_homology
from .reporting import CheckReport


class InputError(Exception):
    """A problem with the input documents or the configuration."""


# ---------------------------------------------------------------------------
# resolvers
# ---------------------------------------------------------------------------

_GROUP_BUILDERS = {
    "z2": lambda: FiniteGroup.cyclic(2),
    "z3": lambda: FiniteGroup.cyclic(3),
    "z4": lambda: FiniteGroup.cyclic(4),
    "z2xz2": lambda: FiniteGroup.direct_product(
        FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)
    ),
    "s3": lambda: FiniteGroup.symmetric(3),
    "d4": lambda: FiniteGroup.dihedral(4),
}

_MODULE_NAMES = ("adjoint", "coadjoint", "trivial", "sign")

_EXTENSION_NAMES = ("s3_over_a3", "kz4_over_kz2", "twisted_klein")


def _canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True)


def _ref_label(ref: str) -> str:
    return "<inline>" if ref.lstrip().startswith(("{", "[")) else ref


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _load_doc(ref: str):
    """A file path or an inline JSON object; parse errors keep location."""
    text = ref
    if not ref.lstrip().startswith(("{", "[")):
        path = Path(ref)
        if not path.is_file():
            raise InputError(f"no such file or builtin: {ref}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"cannot parse {ref if text is not ref else 'inline document'}: "
            f"{exc.msg} at line {exc.lineno}, column {exc.colno}"
        ) from exc


def resolve_field(spec: str):
    if spec == "q":
        return QQ
    if spec.startswith("f") and spec[1:].isdigit():
        try:
            return PrimeField(int(spec[1:]))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError(f"unknown field {spec!r}: use q or f<prime>")


def resolve_group(ref):
    """Returns (group, canonical document).  `ref` may be a builtin name,
    a path, inline JSON, or an already-parsed document."""
    if isinstance(ref, str):
        build = _GROUP_BUILDERS.get(ref)
        if build is not None:
            g = build()
            return g, group_to_json(g)
    doc = ref if isinstance(ref, dict) else _load_doc(ref)
    try:
        return group_from_json(doc), doc
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad group document: {exc}") from exc


def resolve_hopf(ref, field):
    """Returns (hopf algebra, canonical document).  Construction failures
    of explicit documents are mathematical failures, not input errors."""
    if isinstance(ref, str) and ref in _GROUP_BUILDERS:
        h = group_algebra(_GROUP_BUILDERS[ref](), field, name=f"k[{ref}]")
        return h, hopf_to_json(h)
    label = _ref_label(ref) if isinstance(ref, str) else "<embedded>"
    doc = ref if isinstance(ref, dict) else _load_doc(ref)
    try:
        h = hopf_from_json(doc, field, name=doc.get("name", label))
    except KeyError as exc:
        raise InputError(f"hopf document {label} is missing field {exc}") from exc
    return h, doc


def resolve_algebra(ref, field):
    """An algebra to be graded: a Hopf builtin/document with the coalgebra
    structure forgotten, or a bare {dim, basis, mult, unit} document."""
    if isinstance(ref, str) and (
        ref in _GROUP_BUILDERS or not ref.lstrip().startswith("{")
    ):
        h, _ = resolve_hopf(ref, field)
        return underlying_algebra(h)
    doc = ref if isinstance(ref, dict) else _load_doc(ref)
    if "comult" in doc:
        h, _ = resolve_hopf(doc, field)
        return underlying_algebra(h)
    try:
        basis = doc.get("basis") or [f"e{i}" for i in range(int(doc["dim"]))]
        d = len(basis)
        mult = SparseMatrix.from_entries(
            d, d * d, field, ((k, i * d + j, c) for i, j, k, c in doc["mult"])
        )
        unit = {
            i: field.coerce(c)
            for i, c in enumerate(doc["unit"])
            if field.coerce(c)
        }
    except KeyError as exc:
        raise InputError(f"algebra document is missing field {exc}") from exc
    return AlgebraData(field, basis, mult, unit, name=doc.get("name", "A"))


def _sign_character(g: FiniteGroup, field):
    """The unique nontrivial {1,-1}-valued character, when it exists."""
    found = []
    for bits in itertools.product((1, -1), repeat=g.order - 1):
        char = {g.identity: 1}
        rest = [x for x in range(g.order) if x != g.identity]
        char.update(dict(zip(rest, bits)))
        if all(
            char[g.mul(a, b)] == char[a] * char[b]
            for a in range(g.order)
            for b in range(g.order)
        ):
            if any(v == -1 for v in char.values()):
                found.append(char)
    if not found:
        raise InputError("the group has no sign character")
    if len(found) > 1:
        raise InputError(
            "the sign character is ambiguous for this group; "
            "provide the module as a document"
        )
    return {i: field.coerce(c) for i, c in found[0].items()}


def resolve_module(ref: str, h):
    """Returns (crossed module, canonical document)."""
    if ref == "adjoint":
        m = adjoint(h)
    elif ref == "coadjoint":
        m = coadjoint(h)
    elif ref == "trivial":
        m = trivial_module(h)
    elif ref == "sign":
        g = getattr(h, "group", None)
        if g is None:
            raise InputError("the sign module needs a group algebra")
        m = one_dimensional(h, _sign_character(g, h.field), name="k_sign")
    elif ref.startswith("modular_pair:"):
        label = ref.split(":", 1)[1]
        if label in h.basis:
            sigma = h.basis.index(label)
        elif label.isdigit() and int(label) < h.dim:
            sigma = int(label)
        else:
            raise InputError(f"no basis element {label!r} in {h.name}")
        try:
            m, _ = modular_pair_module(h, sigma)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        doc = _load_doc(ref)
        try:
            return crossed_from_json(h, doc), doc
        except KeyError as exc:
            raise InputError(
                f"module document {ref} is missing field {exc}"
            ) from exc
    return m, crossed_to_json(m)


def resolve_extension(ref: str, field):
    """Returns (comodule algebra, canonical document) for the galois
    subcommand: a builtin alias, a grading document, or a crossed-product
    document."""
    if ref == "s3_over_a3":
        s3 = FiniteGroup.symmetric(3)
        blocks = {
            0: [i for i in range(6) if s3.element_order(i) != 2],
            1: [i for i in range(6) if s3.element_order(i) == 2],
        }
        alg = underlying_algebra(group_algebra(s3, field, name="kS3"))
        ca = strongly_graded(FiniteGroup.cyclic(2), alg, blocks, name="kS3")
        doc = {"algebra": "s3", "grading": {"group": "z2", "blocks": blocks}}
        return ca, doc
    if ref == "kz4_over_kz2":
        alg = underlying_algebra(
            group_algebra(FiniteGroup.cyclic(4), field, name="kZ4")
        )
        blocks = {0: [0, 2], 1: [1, 3]}
        ca = strongly_graded(FiniteGroup.cyclic(2), alg, blocks, name="kZ4")
        doc = {"algebra": "z4", "grading": {"group": "z2", "blocks": blocks}}
        return ca, doc
    if ref == "twisted_klein":
        v4 = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
        omega = {
            (x, y): field.coerce((-1) ** ((x % 2) * (y // 2)))
            for x in range(4)
            for y in range(4)
        }
        ca = twisted_group_algebra(v4, omega, field=field, name="kV4_tw")
        doc = {
            "crossed_product": {
                "base": "k",
                "group": "z2xz2",
                "cocycle": {f"{x},{y}": [[0, (-1) ** ((x % 2) * (y // 2))]]
                            for x in range(4) for y in range(4)},
            }
        }
        return ca, doc
    doc = _load_doc(ref)
    if "grading" in doc:
        alg = resolve_algebra(doc["algebra"], field)
        g, _ = resolve_group(doc["grading"]["group"])
        try:
            blocks = {int(k): v for k, v in doc["grading"]["blocks"].items()}
        except (AttributeError, TypeError, ValueError) as exc:
            raise InputError(f"bad grading blocks: {exc}") from exc
        return strongly_graded(g, alg, blocks, name=alg.name), doc
    if "crossed_product" in doc:
        spec = doc["crossed_product"]
        g, _ = resolve_group(spec["group"])
        base_ref = spec["base"]
        if base_ref == "k":
            base = AlgebraData(
                field, ("1",),
                SparseMatrix(1, 1, field, {0: {0: field.one}}),
                {0: field.one}, name="k",
            )
        else:
            h, _ = resolve_hopf(base_ref, field)
            base = underlying_algebra(h)
        action = None
        if "action" in spec:
            action = {}
            for key, triples in spec["action"].items():
                cols: dict = {}
                for i, j, c in triples:
                    cols.setdefault(int(j), {})[int(i)] = field.coerce(c)
                action[int(key)] = SparseMatrix(
                    base.dim, base.dim, field, cols
                )
        cocycle = None
        if "cocycle" in spec:
            cocycle = {}
            for key, entries in spec["cocycle"].items():
                x, y = (int(t) for t in key.split(","))
                cocycle[(x, y)] = {
                    int(i): field.coerce(c) for i, c in entries
                }
        return (
            crossed_product(base, g, action=action, cocycle=cocycle,
                            name=doc.get("name")),
            doc,
        )
    raise InputError(
        f"extension document {ref} needs a 'grading' or 'crossed_product' entry"
    )


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


def _check_entries(rep: CheckReport, prefix: str = "") -> list:
    out = []
    for r in rep.checks:
        entry = {"name": prefix + r.name, "passed": r.passed}
        if r.witness is not None:
            entry["witness"] = r.witness
        out.append(entry)
    return out


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    print(f"schema {report['schema']}  command: {' '.join(report['command'])}")
    for name, digest in sorted(report["inputs"].items()):
        print(f"input  {name}  sha256:{digest[:16]}…")
    for entry in report["checks"]:
        mark = "ok  " if entry["passed"] else "FAIL"
        wit = f"  [{entry['witness']}]" if not entry["passed"] and entry.get(
            "witness"
        ) else ""
        print(f"  {mark} {entry['name']}{wit}")
    for title, table in sorted(report["tables"].items()):
        if isinstance(table, list) and all(
            not isinstance(x, (dict, list)) for x in table
        ):
            cells = " ".join("inf" if x is None else str(x) for x in table)
            print(f"{title}: {cells}")
        else:
            print(f"{title}: {json.dumps(table, sort_keys=True)}")
    t = report.get("timings", {})
    if t:
        print("timings: " + ", ".join(f"{k}={v}s" for k, v in sorted(t.items())))
    print(f"status: {report['status']}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _require_char_zero(field, what: str) -> None:
    if field.characteristic != 0:
        raise InputError(
            f"{what} requires characteristic zero; "
            f"{field.name} has characteristic {field.characteristic}"
        )


def _cmd_verify(args, field, inputs, checks, tables) -> None:
    kind = args.kind
    refs = args.refs
    if kind in ("hopf", "crossed", "galois") and len(refs) != 1:
        raise InputError(f"verify {kind} takes exactly one document")
    if kind == "cyclic" and len(refs) != 2:
        raise InputError("verify cyclic takes a Hopf algebra and a module")
    if kind == "hopf":
        h, doc = resolve_hopf(refs[0], field)
        inputs[f"hopf {_ref_label(refs[0])}"] = _sha(_canonical(doc))
        checks += _check_entries(verify_hopf(h))
    elif kind == "crossed":
        doc = _load_doc(refs[0])
        if "base" not in doc:
            raise InputError("crossed documents must carry a 'base' Hopf algebra")
        base = doc["base"]
        h, _ = resolve_hopf(base if isinstance(base, str) else _canonical(base),
                            field)
        try:
            m = crossed_from_json(h, doc)
        except KeyError as exc:
            raise InputError(
                f"module document {refs[0]} is missing field {exc}"
            ) from exc
        inputs[f"crossed {_ref_label(refs[0])}"] = _sha(_canonical(doc))
        checks += _check_entries(verify_crossed(m))
        checks += _check_entries(verify_modular(m))
    elif kind == "cyclic":
        h, hdoc = resolve_hopf(refs[0], field)
        m, mdoc = resolve_module(refs[1], h)
        inputs[f"hopf {_ref_label(refs[0])}"] = _sha(_canonical(hdoc))
        inputs[f"module {_ref_label(refs[1])}"] = _sha(_canonical(mdoc))
        z = build_cyclic(m.h, m, args.max_degree + 1, require_modular=False)
        checks += _check_entries(verify_cyclic_identities(z, args.max_degree))
    else:  # galois
        ca, doc = resolve_extension(refs[0], field)
        inputs[f"extension {_ref_label(refs[0])}"] = _sha(_canonical(doc))
        checks += _check_entries(verify_comodule_algebra(ca))
        g = galois_check(ca)
        checks += _check_entries(g.report)
        tables["base dimension"] = [g.base.dim]


def _cmd_homology(args, field, inputs, checks, tables) -> None:
    want_hc = args.command == "hc"
    if want_hc:
        _require_char_zero(field, "cyclic homology")
    h, hdoc = resolve_hopf(args.hopf, field)
    m, mdoc = resolve_module(args.module, h)
    inputs[f"hopf {_ref_label(args.hopf)}"] = _sha(_canonical(hdoc))
    inputs[f"module {_ref_label(args.module)}"] = _sha(_canonical(mdoc))
    n = args.max_degree
    z = build_cyclic(m.h, m, n + 1)
    if not want_hc:
        tables["hh"] = hochschild(z, 0, n, jobs=args.jobs)
        return
    if args.method == "both":
        a = hc_connes(z, 0, n, jobs=args.jobs)
        b = hc_bicomplex(z, 0, n, jobs=args.jobs)
        tables["hc (lambda)"] = a
        tables["hc (bicomplex)"] = b
        checks.append(
            {"name": "the two cyclic routes agree", "passed": a == b}
        )
    else:
        tables[f"hc ({args.method})"] = hc(z, 0, n, method=args.method,
                                           jobs=args.jobs)


def _cmd_galois(args, field, inputs, checks, tables) -> None:
    ca, doc = resolve_extension(args.extension, field)
    inputs[f"extension {_ref_label(args.extension)}"] = _sha(_canonical(doc))
    checks += _check_entries(verify_comodule_algebra(ca))
    g = galois_check(ca)
    checks += _check_entries(g.report)
    compare = field.characteristic == 0
    lc = lambda_iso(g, max_degree=args.max_degree, compare_hc=compare,
                    jobs=args.jobs)
    checks += _check_entries(lc.report)
    tables["relative dims"] = [lc.relative.dim(k) for k in range(args.max_degree + 1)]
    if lc.hc_relative is not None:
        tables["hc (relative)"] = lc.hc_relative
        tables["hc (transported)"] = lc.hc_hopf


def _cmd_burghelea(args, field, inputs, checks, tables) -> None:
    _require_char_zero(field, "the conjugacy-class folding")
    g, gdoc = resolve_group(args.group)
    h = group_algebra(g, field, name=f"k[{args.group}]")
    m, mdoc = resolve_module(args.module, h)
    inputs[f"group {_ref_label(args.group)}"] = _sha(_canonical(gdoc))
    inputs[f"module {_ref_label(args.module)}"] = _sha(_canonical(mdoc))
    bf = burghelea_finite(g, m, 0, args.max_degree, jobs=args.jobs)
    checks += _check_entries(bf.report)
    tables["hc (direct)"] = bf.direct
    tables["hc (folded)"] = bf.folded
    tables["per class"] = {k: v for k, v in sorted(bf.per_class.items())}


def _cmd_qtorus(args, field, inputs, checks, tables) -> None:
    doc = _load_doc(args.document)
    inputs["torus"] = _sha(_canonical(doc))
    try:
        order = doc.get("q_order")
        if order in ("infinite", None):
            order = None
        else:
            order = int(order)
        tc = TorusCocycle(int(doc["r"]), doc["a"], order)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad torus document: {exc}") from exc
    th = torus_homology(tc, 0, args.max_degree)
    lat = th.lattice
    tables["hh totals"] = th.hh_totals
    tables["hc totals"] = th.hc_totals
    tables["per point"] = [
        {
            "degree": k,
            "hh": th.hh[k].at_origin,
            "hc at origin": th.hc[k].at_origin,
            "hc elsewhere": th.hc[k].per_other_point,
        }
        for k in range(args.max_degree + 1)
    ]
    tables["lattice"] = {
        "rank": lat.rank,
        "index": lat.index,
        "basis": [list(b) for b in lat.basis],
    }
    bound = 2 * tc.q_order if tc.q_order else 4
    if (2 * bound + 1) ** tc.r <= 50_000:
        checks += _check_entries(box_check(tc, bound))


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hopfcyclic",
        description="exact cyclic homology for Hopf algebras and "
        "Hopf-Galois extensions",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=3, metavar="N",
                        help="largest homological degree (default 3)")
    common.add_argument("--field", default="q", metavar="F",
                        help="q for the rationals, f<p> for a prime field")
    common.add_argument("--method", choices=("lambda", "bicomplex", "both"),
                        default="lambda", help="cyclic homology route")
    common.add_argument("--format", choices=("json", "table"), default="table",
                        dest="fmt", help="report format")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker parallelism over degrees")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="run an axiom suite on a document")
    p.add_argument("kind", choices=("hopf", "crossed", "cyclic", "galois"))
    p.add_argument("refs", nargs="+", metavar="DOC")

    for name, blurb in (("hh", "Hochschild homology"), ("hc", "cyclic homology")):
        p = sub.add_parser(name, parents=[common], help=blurb)
        p.add_argument("hopf", help="builtin group name or Hopf document")
        p.add_argument("module", help="builtin module name or document")

    p = sub.add_parser("galois", parents=[common],
                       help="certify an extension and compare both homologies")
    p.add_argument("extension", help="builtin alias or extension document")

    p = sub.add_parser("burghelea", parents=[common],
                       help="conjugacy-class folding vs direct computation")
    p.add_argument("group", help="builtin group name or group document")
    p.add_argument("module", help="builtin module name or document")

    p = sub.add_parser("qtorus", parents=[common],
                       help="quantum-torus lattice and point counts")
    p.add_argument("document", help="torus document (file or inline JSON)")
    return top


_DISPATCH = {
    "verify": _cmd_verify,
    "hh": _cmd_homology,
    "hc": _cmd_homology,
    "galois": _cmd_galois,
    "burghelea": _cmd_burghelea,
    "qtorus": _cmd_qtorus,
}


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.max_degree < 1:
        print("input error: --max-degree must be at least 1", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("input error: --jobs must be at least 1", file=sys.stderr)
        return 2
    started = time.monotonic()
    inputs: dict = {}
    checks: list = []
    tables: dict = {}
    try:
        field = resolve_field(args.field)
        _DISPATCH[args.command](args, field, inputs, checks, tables)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (CharacteristicError, TruncationError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    ok = all(entry["passed"] for entry in checks)
    echo = [args.command]
    if args.command == "verify":
        echo += [args.kind, *args.refs]
    elif args.command in ("hh", "hc"):
        echo += [args.hopf, args.module]
    elif args.command == "galois":
        echo += [args.extension]
    elif args.command == "burghelea":
        echo += [args.group, args.module]
    else:
        echo += [args.document]
    report = {
        "schema": 1,
        "command": echo,
        "config": {
            "max_degree": args.max_degree,
            "field": args.field,
            "method": args.method,
            "jobs": args.jobs,
        },
        "inputs": inputs,
        "checks": checks,
        "tables": tables,
        "status": "pass" if ok else "fail",
        "timings": {"total": round(time.monotonic() - started, 6)},
    }
    _emit(report, args.fmt)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
