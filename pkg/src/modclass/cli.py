"""Command line interface.

Designed for batch use: no prompts, deterministic output for a fixed seed,
and machine-readable exit codes.  Exit 0 means success (and, for `count`
and `verify`, that the mathematical checks agreed); exit 2 is reserved for
mathematical failures (a consistency check or verification clause failed);
exit 1 covers usage errors, bad input files, resource limits and
inconclusive randomized searches.

Report commands (`simples`, `count`, `fiber`, `verify`, `decompose`,
`vertex`) honour `--format table` (default) or `--format structured`
(JSON).  Module-emitting commands (`make`, `extend`, `restrict`, `green`)
always write a module document, to `-o FILE` or stdout.

With `--cache-dir DIR` the report commands memoize rendered output keyed
by a hash of the full request; a cache hit replays byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time

from .errors import (
    ConsistencyError,
    InconclusiveError,
    InputError,
    LimitError,
    ModclassError,
    NotSubfieldError,
)
from . import limits
from .finite_field import make_field
from . import classify
from . import meataxe
from . import green as green_mod
from .modrep import (
    extend_scalars,
    regular_module,
    restrict_scalars,
    trivial_module,
)
from .perm_group import catalog
from . import serialize

CACHE_SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for mathematical
    # failures here, so remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(1)


def _resolve_group(name_or_path: str):
    """A catalog name or a path to a group/module JSON document.

    Returns (group, group_doc) where group_doc is the canonical document
    used in cache keys.
    """
    groups = catalog()
    if name_or_path in groups:
        return groups[name_or_path], {"name": name_or_path}
    if os.path.exists(name_or_path):
        try:
            with open(name_or_path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError("cannot read group file %s: %s" % (name_or_path, exc)) from None
        if isinstance(doc, dict) and doc.get("kind") == "module":
            doc = doc.get("group")
        G = serialize.group_from_doc(doc)
        return G, serialize.group_to_doc(G)
    raise InputError(
        "unknown group %r: not a catalog name (%s) and not a file"
        % (name_or_path, ", ".join(sorted(groups)))
    )


def _load_module_arg(path: str):
    V = serialize.load_module(path)
    return V


def _parse_perm_list(text: str, degree: int):
    try:
        data = json.loads(text)
        perms = [tuple(int(x) for x in g) for g in data]
    except (json.JSONDecodeError, TypeError, ValueError):
        raise InputError(
            "expected a JSON list of permutations (0-based image lists), got %r" % text
        ) from None
    for g in perms:
        if sorted(g) != list(range(degree)):
            raise InputError("not a permutation of 0..%d: %r" % (degree - 1, list(g)))
    return perms


# ---------------------------------------------------------------- caching


def _cache_paths(cache_dir: str, key_doc) -> tuple[str, str]:
    digest = hashlib.sha256(serialize.dumps_canonical(key_doc).encode()).hexdigest()
    return os.path.join(cache_dir, digest + ".json"), digest


def _cache_read(path: str):
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            doc = json.load(fh)
        if doc.get("cache_schema") != CACHE_SCHEMA:
            raise ValueError("wrong cache schema")
        output = doc["output"]
        code = doc["exit_code"]
        if not isinstance(output, str) or not isinstance(code, int):
            raise ValueError("wrong field types")
        return output, code
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print("warning: evicting corrupt cache entry %s (%s)" % (path, exc), file=sys.stderr)
        try:
            os.unlink(path)
        except OSError:
            pass
        return None


def _cache_write(path: str, key_doc, output: str, exit_code: int) -> None:
    lock = path + ".lock"
    fd = None
    deadline = time.monotonic() + 5.0
    while True:
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
            break
        except FileExistsError:
            if time.monotonic() > deadline:
                print("warning: cache lock %s is stale, skipping write" % lock, file=sys.stderr)
                return
            time.sleep(0.05)
    try:
        doc = {
            "cache_schema": CACHE_SCHEMA,
            "request": key_doc,
            "output": output,
            "exit_code": exit_code,
        }
        tmp_fd, tmp_path = tempfile.mkstemp(dir=os.path.dirname(path) or ".")
        try:
            with os.fdopen(tmp_fd, "w") as fh:
                fh.write(serialize.dumps_canonical(doc))
            os.replace(tmp_path, path)
        except BaseException:
            try:
                os.unlink(tmp_path)
            except OSError:
                pass
            raise
    finally:
        os.close(fd)
        try:
            os.unlink(lock)
        except OSError:
            pass


def _run_cached(args, key_doc, render):
    """render() -> (output_text, exit_code); replayed from cache when possible."""
    if args.cache_dir:
        os.makedirs(args.cache_dir, exist_ok=True)
        path, _ = _cache_paths(args.cache_dir, key_doc)
        hit = _cache_read(path)
        if hit is not None:
            sys.stdout.write(hit[0])
            return hit[1]
    output, code = render()
    if args.cache_dir:
        _cache_write(path, key_doc, output, code)
    sys.stdout.write(output)
    return code


# ---------------------------------------------------------------- commands


def _field_label(p: int, n: int) -> str:
    return "GF(%d)" % p if n == 1 else "GF(%d^%d)" % (p, n)


def _cmd_simples(args) -> int:
    G, gdoc = _resolve_group(args.group)
    key = {
        "command": "simples",
        "group": gdoc,
        "p": args.p,
        "n": args.n,
        "seed": args.seed,
        "format": args.format,
    }

    def render():
        K = make_field(args.p, args.n)
        S = meataxe.simple_modules(G, K, seed=args.seed)
        if args.format == "structured":
            doc = {
                "group": gdoc,
                "field": serialize.field_to_doc(K),
                "simples": [
                    {"index": i, "dim": W.dim, "end_degree": S.end_degrees[i]}
                    for i, W in enumerate(S.modules)
                ],
            }
            return serialize.dumps_canonical(doc), 0
        lines = [
            "simple %s-modules for group of order %d" % (_field_label(args.p, args.n), G.order)
        ]
        lines.append("index  dim  end_degree")
        for i, W in enumerate(S.modules):
            lines.append("%5d  %3d  %10d" % (i, W.dim, S.end_degrees[i]))
        return "\n".join(lines) + "\n", 0

    return _run_cached(args, key, render)


def _cmd_count(args) -> int:
    G, gdoc = _resolve_group(args.group)
    key = {
        "command": "count",
        "group": gdoc,
        "p": args.p,
        "seed": args.seed,
        "format": args.format,
    }

    def render():
        rep = classify.count_absolutely_simple(G, args.p, seed=args.seed)
        if args.format == "structured":
            doc = {
                "group": gdoc,
                "p": args.p,
                "rows": [
                    {
                        "index": r.index,
                        "dim": r.dim,
                        "end_degree": r.end_degree,
                        "splitting_degree": r.splitting_degree,
                        "fiber_size": r.fiber_size,
                    }
                    for r in rep.rows
                ],
                "total": rep.total,
                "p_regular_classes": rep.p_regular_classes,
                "agree": rep.agree,
            }
            return serialize.dumps_canonical(doc), 0 if rep.agree else 2
        lines = ["absolutely simple classes over the closure of GF(%d)" % args.p]
        lines.append("index  dim  end_degree  splitting_field  fiber_size")
        for r in rep.rows:
            lines.append(
                "%5d  %3d  %10d  %15s  %10d"
                % (r.index, r.dim, r.end_degree, _field_label(args.p, r.splitting_degree), r.fiber_size)
            )
        lines.append("total: %d" % rep.total)
        lines.append("p-regular classes: %d" % rep.p_regular_classes)
        lines.append("agree: %s" % ("yes" if rep.agree else "NO"))
        return "\n".join(lines) + "\n", 0 if rep.agree else 2

    return _run_cached(args, key, render)


def _cmd_fiber(args) -> int:
    if args.module:
        V = _load_module_arg(args.module)
        with open(args.module) as fh:
            mdoc = json.load(fh)
        key_mod = mdoc
        if not meataxe.is_indecomposable(V, seed=args.seed):
            raise InputError("fibers are defined for indecomposable modules; decompose first")
    else:
        if args.group is None or args.p is None:
            raise InputError("fiber needs either --module FILE or -g GROUP with -p P")
        G, gdoc = _resolve_group(args.group)
        K = make_field(args.p, args.n)
        S = meataxe.simple_modules(G, K, seed=args.seed)
        if not 0 <= args.index < len(S.modules):
            raise InputError(
                "index %d out of range: %d simple modules" % (args.index, len(S.modules))
            )
        V = S.modules[args.index]
        key_mod = {"group": gdoc, "p": args.p, "n": args.n, "index": args.index}
    key = {
        "command": "fiber",
        "module": key_mod,
        "degree": args.degree,
        "seed": args.seed,
        "format": args.format,
    }

    def render():
        level = classify.fiber(V, args.degree, seed=args.seed)
        L = level.field
        if args.format == "structured":
            doc = {
                "degree": args.degree,
                "field": serialize.field_to_doc(L),
                "entries": [{"dim": W.dim, "multiplicity": m} for W, m in level.entries],
            }
            return serialize.dumps_canonical(doc), 0
        lines = ["fiber over %s (degree %d extension)" % (_field_label(L.p, L.n), args.degree)]
        lines.append("dim  multiplicity")
        for W, m in level.entries:
            lines.append("%3d  %12d" % (W.dim, m))
        return "\n".join(lines) + "\n", 0

    return _run_cached(args, key, render)


def _cmd_verify(args) -> int:
    G, gdoc = _resolve_group(args.group)
    key = {
        "command": "verify",
        "group": gdoc,
        "p": args.p,
        "bound": args.bound,
        "seed": args.seed,
        "format": args.format,
    }

    def render():
        rep = classify.verify_classification(G, args.p, bound=args.bound, seed=args.seed)
        if args.format == "structured":
            doc = {
                "group": gdoc,
                "p": args.p,
                "bound": rep.bound,
                "clauses": [
                    {"name": c.name, "passed": c.passed, "detail": c.detail}
                    for c in rep.clauses
                ],
                "passed": rep.passed,
            }
            return serialize.dumps_canonical(doc), 0 if rep.passed else 2
        lines = ["verification for p=%d through extension degree %d" % (args.p, rep.bound)]
        for c in rep.clauses:
            lines.append(
                "%-26s %s%s" % (c.name, "PASS" if c.passed else "FAIL", "" if c.passed else "  " + c.detail)
            )
        lines.append("result: %s" % ("PASS" if rep.passed else "FAIL"))
        return "\n".join(lines) + "\n", 0 if rep.passed else 2

    return _run_cached(args, key, render)


def _emit_module(args, V, group_name=None) -> int:
    text = serialize.dumps_canonical(serialize.module_to_doc(V, group_name))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_make(args) -> int:
    G, gdoc = _resolve_group(args.group)
    name = gdoc.get("name")
    K = make_field(args.p, args.n)
    if args.what == "regular":
        V = regular_module(G, K)
    elif args.what == "trivial":
        V = trivial_module(G, K)
    else:
        S = meataxe.simple_modules(G, K, seed=args.seed)
        if not 0 <= args.index < len(S.modules):
            raise InputError(
                "index %d out of range: %d simple modules" % (args.index, len(S.modules))
            )
        V = S.modules[args.index]
    return _emit_module(args, V, name)


def _cmd_decompose(args) -> int:
    V = _load_module_arg(args.module)
    with open(args.module) as fh:
        mdoc = json.load(fh)
    key = {
        "command": "decompose",
        "module": mdoc,
        "seed": args.seed,
        "format": args.format,
    }

    def render():
        dec = meataxe.decompose(V, seed=args.seed)
        if args.format == "structured":
            doc = {
                "dim": V.dim,
                "summands": [{"dim": W.dim, "multiplicity": m} for W, m in dec.summands],
            }
            return serialize.dumps_canonical(doc), 0
        lines = ["indecomposable summands of a dim %d module" % V.dim]
        lines.append("dim  multiplicity")
        for W, m in dec.summands:
            lines.append("%3d  %12d" % (W.dim, m))
        return "\n".join(lines) + "\n", 0

    return _run_cached(args, key, render)


def _cmd_vertex(args) -> int:
    V = _load_module_arg(args.module)
    with open(args.module) as fh:
        mdoc = json.load(fh)
    key = {
        "command": "vertex",
        "module": mdoc,
        "seed": args.seed,
        "format": args.format,
    }

    def render():
        vs = green_mod.source(V, seed=args.seed)
        Q, U = vs.vertex, vs.source
        gens = [list(g) for g in Q.group.generators]
        if args.format == "structured":
            doc = {
                "vertex_order": Q.order,
                "vertex_generators": gens,
                "source_dim": U.dim,
                "projective": Q.order == 1,
            }
            return serialize.dumps_canonical(doc), 0
        lines = [
            "vertex order: %d" % Q.order,
            "vertex generators: %s" % json.dumps(gens),
            "source dim: %d" % U.dim,
            "projective: %s" % ("yes" if Q.order == 1 else "no"),
        ]
        return "\n".join(lines) + "\n", 0

    return _run_cached(args, key, render)


def _cmd_green(args) -> int:
    V = _load_module_arg(args.module)
    G = V.group
    Q = G.generated_subgroup(_parse_perm_list(args.vertex_gens, G.degree))
    H = G.generated_subgroup(_parse_perm_list(args.subgroup_gens, G.degree))
    W = green_mod.green_correspondent(V, Q, H, seed=args.seed)
    return _emit_module(args, W)


def _cmd_extend(args) -> int:
    V = _load_module_arg(args.module)
    K = V.field
    L = make_field(K.p, K.n * args.degree)
    return _emit_module(args, extend_scalars(V, L))


def _cmd_restrict(args) -> int:
    V = _load_module_arg(args.module)
    K = V.field
    m = args.to_degree
    if K.n % m != 0:
        raise InputError("target degree %d does not divide the field degree %d" % (m, K.n))
    return _emit_module(args, restrict_scalars(V, make_field(K.p, m)))


# ---------------------------------------------------------------- parser


def _add_group_field(sp, need_p=True):
    sp.add_argument("-g", "--group", required=True, help="catalog name or group JSON file")
    if need_p:
        sp.add_argument("-p", type=int, required=True, help="field characteristic (prime)")
        sp.add_argument("-n", type=int, default=1, help="field degree over the prime field")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="modclass", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    top.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    top.add_argument(
        "--format", choices=("table", "structured"), default="table", help="report output format"
    )
    top.add_argument("--cache-dir", default=None, help="directory for memoized report output")
    top.add_argument("--max-group-order", type=int, default=None, help="override the group order cap")
    top.add_argument("--max-field-size", type=int, default=None, help="override the field size cap")
    sub = top.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simples", help="list the simple modules over GF(p^n)")
    _add_group_field(sp)
    sp.set_defaults(fn=_cmd_simples)

    sp = sub.add_parser("count", help="count absolutely simple classes and compare with the class count")
    _add_group_field(sp)
    sp.set_defaults(fn=_cmd_count)

    sp = sub.add_parser("fiber", help="components of a module after a field extension")
    sp.add_argument("-g", "--group", default=None, help="catalog name or group JSON file")
    sp.add_argument("-p", type=int, default=None, help="field characteristic (prime)")
    sp.add_argument("-n", type=int, default=1, help="field degree over the prime field")
    sp.add_argument("--index", type=int, default=0, help="which simple module (with -g)")
    sp.add_argument("--module", default=None, help="module JSON file (alternative to -g)")
    sp.add_argument("--degree", type=int, required=True, help="extension degree")
    sp.set_defaults(fn=_cmd_fiber)

    sp = sub.add_parser("verify", help="run the classification verification clauses")
    _add_group_field(sp)
    sp.add_argument("--bound", type=int, default=None, help="largest extension degree to check")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("make", help="write a standard module as JSON")
    sp.add_argument("what", choices=("regular", "trivial", "simple"))
    _add_group_field(sp)
    sp.add_argument("--index", type=int, default=0, help="which simple module (for 'simple')")
    sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    sp.set_defaults(fn=_cmd_make)

    sp = sub.add_parser("decompose", help="indecomposable summands of a module file")
    sp.add_argument("--module", required=True, help="module JSON file")
    sp.set_defaults(fn=_cmd_decompose)

    sp = sub.add_parser("vertex", help="vertex and source of an indecomposable module")
    sp.add_argument("--module", required=True, help="module JSON file")
    sp.set_defaults(fn=_cmd_vertex)

    sp = sub.add_parser("green", help="Green correspondent across a subgroup containing the normalizer")
    sp.add_argument("--module", required=True, help="module JSON file")
    sp.add_argument("--vertex-gens", required=True, help="JSON list of permutations generating Q")
    sp.add_argument("--subgroup-gens", required=True, help="JSON list of permutations generating H")
    sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    sp.set_defaults(fn=_cmd_green)

    sp = sub.add_parser("extend", help="extend scalars by a field extension of given degree")
    sp.add_argument("--module", required=True, help="module JSON file")
    sp.add_argument("--degree", type=int, required=True, help="extension degree")
    sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    sp.set_defaults(fn=_cmd_extend)

    sp = sub.add_parser("restrict", help="restrict scalars to a subfield (default: the prime field)")
    sp.add_argument("--module", required=True, help="module JSON file")
    sp.add_argument("--to-degree", type=int, default=1, help="degree of the target subfield")
    sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    sp.set_defaults(fn=_cmd_restrict)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_group_order is not None:
        limits.MAX_GROUP_ORDER = args.max_group_order
    if args.max_field_size is not None:
        limits.MAX_FIELD_SIZE = args.max_field_size
    try:
        return args.fn(args)
    except ConsistencyError as exc:
        print("consistency failure: %s" % exc, file=sys.stderr)
        return 2
    except (InputError, LimitError, NotSubfieldError, InconclusiveError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ModclassError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
