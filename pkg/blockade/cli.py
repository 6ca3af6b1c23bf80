"""Command-line surface.

Every subcommand prints one JSON report on stdout (or a table with
``--pretty``). Exit status is 0 on success, 1 on a domain error (with an
error report), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Sequence, Tuple

from .constants import BlockadeConstants
from .descriptors import (
    load_margaux_modules,
    load_module,
    load_modules,
    load_orbit_space,
    load_pairs,
    module_to_json,
)
from .errors import BlockadeError
from .extcalc import (
    INFINITE,
    ReductiveSimpleDescriptor,
    ext_onedim_abelian,
    ext_reductive_simple,
    ext_trivial_vs_simple,
    keythmext_case3_general,
)
from .margaux import margaux_block
from .pdf_report import ReportPDFGenerator
from .report import Report, render_pretty
from .repthy import (
    adjoint_multiplicity_oracle,
    configure_cache,
    freudenthal_multiplicities,
    prv_adjoint_multiplicity,
    tensor_decompose,
    weyl_dimension,
)
from .rootsys import (
    RootSystem,
    Weight,
    build_root_system,
    cartan_determinant,
    fundamental_group,
    fundamental_group_order,
    root_to_weight,
)
from .settings import Settings, SettingsStore, get_settings, update_settings
from .twistblocks import (
    EvalModuleDescriptor,
    OrbitSpace,
    block_partition,
    ext_dim,
    ext_matrix,
    linkage_chain,
)
from .version import get_version_string

logger = logging.getLogger(__name__)

# Handlers return (inputs echoed into the digest, results, raw file bytes)
Outcome = Tuple[Dict[str, Any], Any, List[bytes]]


class _Context:
    """Per-invocation state shared by the handlers."""

    def __init__(self, args: argparse.Namespace, settings: Settings):
        self.args = args
        self.settings = settings
        self.workers = args.workers or settings.workers

    def map(self, fn: Callable, items: Sequence) -> List:
        if self.workers <= 1 or len(items) <= 1:
            return [fn(item) for item in items]
        logger.debug(f"Evaluating {len(items)} items on {self.workers} threads")
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, items))


def _weight_arg(text: str) -> Weight:
    try:
        return Weight.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _dimension_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _abelian_dimension_arg(text: str):
    if text == INFINITE:
        return INFINITE
    return _dimension_arg(text)


def _int_list_arg(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _setting_arg(text: str) -> Tuple[str, Any]:
    key, sep, raw = text.partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def _coords(w: Weight) -> List[int]:
    return list(w.coords)


def _root_system(args: argparse.Namespace) -> RootSystem:
    return build_root_system(args.type, args.rank)


def _multiset_rows(items) -> List[Dict[str, Any]]:
    return [{"weight": _coords(w), "mult": m} for w, m in items]


def cmd_roots(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    results = {
        "system": rs.name,
        "cartan": [list(row) for row in rs.cartan],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "positive_root_count": len(rs.positive_roots),
        "highest_root": list(rs.highest_root),
        "highest_root_weight": _coords(root_to_weight(rs, rs.highest_root)),
        "fundamental_group": list(fundamental_group(rs)),
        "fundamental_group_order": fundamental_group_order(rs),
        "cartan_determinant": cartan_determinant(rs),
    }
    return {"type": rs.type_letter, "rank": rs.rank}, results, []


def cmd_dim(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    lam = ctx.args.lam
    return {"system": rs.name, "lam": _coords(lam)}, {"dim": weyl_dimension(rs, lam)}, []


def cmd_freudenthal(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    lam = ctx.args.lam
    diagram = freudenthal_multiplicities(rs, lam)
    results = {"dim": diagram.total(), "weights": _multiset_rows(diagram.sorted_items())}
    return {"system": rs.name, "lam": _coords(lam)}, results, []


def cmd_tensor(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    lam, mu = ctx.args.lam, ctx.args.mu
    decomposition = tensor_decompose(rs, lam, mu)
    results = {
        "dim": decomposition.dimension(rs),
        "constituents": _multiset_rows(decomposition.sorted_items()),
    }
    return {"system": rs.name, "lam": _coords(lam), "mu": _coords(mu)}, results, []


def cmd_prv(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    lam, mu = ctx.args.lam, ctx.args.mu
    results: Dict[str, Any] = {"c": prv_adjoint_multiplicity(rs, lam, mu)}
    if ctx.args.oracle:
        results["oracle"] = adjoint_multiplicity_oracle(rs, lam, mu)
    return {"system": rs.name, "lam": _coords(lam), "mu": _coords(mu)}, results, []


def _space(ctx: _Context) -> Tuple[OrbitSpace, bytes]:
    ospace, loaded = load_orbit_space(ctx.args.space)
    return ospace, loaded.raw


def cmd_ext(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    args = ctx.args
    ospace, space_raw = _space(ctx)
    inputs: Dict[str, Any] = {"system": rs.name}
    if args.pairs:
        pairs, loaded = load_pairs(args.pairs, bind=(rs, ospace))
        dims = ctx.map(lambda pair: ext_dim(rs, ospace, pair[0], pair[1]), pairs)
        return inputs, {"ext": dims}, [space_raw, loaded.raw]
    if args.all:
        modules, loaded = load_modules(args.all, bind=(rs, ospace))
        return inputs, {"matrix": ext_matrix(rs, ospace, modules)}, [space_raw, loaded.raw]
    E, e_loaded = load_module(args.e, bind=(rs, ospace))
    F, f_loaded = load_module(args.f, bind=(rs, ospace))
    return inputs, {"ext": ext_dim(rs, ospace, E, F)}, [space_raw, e_loaded.raw, f_loaded.raw]


def blocks_report(rs: RootSystem, ospace: OrbitSpace, modules: Sequence[EvalModuleDescriptor],
                  map_fn: Callable = map) -> List[Dict[str, Any]]:
    """Partition modules into blocks, each annotated with its spectral character."""
    groups = block_partition(rs, ospace, modules, map_fn=map_fn)
    return [
        {
            "character": {p: list(rep) for p, rep in character.as_dict().items()},
            "members": members,
        }
        for character, members in groups
    ]


def cmd_blocks(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    ospace, space_raw = _space(ctx)
    modules, loaded = load_modules(ctx.args.modules, bind=(rs, ospace))
    blocks = blocks_report(rs, ospace, modules, map_fn=ctx.map)
    return {"system": rs.name}, {"blocks": blocks}, [space_raw, loaded.raw]


def cmd_chain(ctx: _Context) -> Outcome:
    rs = _root_system(ctx.args)
    ospace, space_raw = _space(ctx)
    E, e_loaded = load_module(ctx.args.e, bind=(rs, ospace))
    F, f_loaded = load_module(ctx.args.f, bind=(rs, ospace))
    bound = ctx.args.bound or ctx.settings.chain_bound
    chain = linkage_chain(rs, ospace, E, F, bound)
    results = {
        "bound": bound,
        "chain": None if chain is None else [module_to_json(T) for T in chain],
        "length": None if chain is None else len(chain) - 1,
    }
    return {"system": rs.name, "bound": bound}, results, [space_raw, e_loaded.raw, f_loaded.raw]


def cmd_margaux(ctx: _Context) -> Outcome:
    modules, loaded = load_margaux_modules(ctx.args.modules)
    block = margaux_block(modules)
    return {}, {"block": block.to_json()}, [loaded.raw]


def cmd_extcalc(ctx: _Context) -> Outcome:
    args = ctx.args
    rule = args.rule
    if rule == "abelian":
        inputs = {"rule": rule, "dim_z": args.dim_z, "lam": args.lam_label, "mu": args.mu_label}
        return inputs, {"ext": ext_onedim_abelian(args.dim_z, args.lam_label, args.mu_label)}, []
    if rule == "reductive":
        rs = build_root_system(args.type, args.rank) if args.type else None
        A = ReductiveSimpleDescriptor(args.center_a, (rs, args.wa) if args.wa is not None else None)
        B = ReductiveSimpleDescriptor(args.center_b, (rs, args.wb) if args.wb is not None else None)
        inputs = {
            "rule": rule, "dim_z": args.dim_z,
            "a": [args.center_a, None if args.wa is None else _coords(args.wa)],
            "b": [args.center_b, None if args.wb is None else _coords(args.wb)],
            "system": rs.name if rs else None,
        }
        return inputs, {"ext": ext_reductive_simple(args.dim_z, rs, A, B)}, []
    if rule == "trivial":
        inputs = {"rule": rule, "dim_z": args.dim_z, "nontrivial": args.nontrivial}
        return inputs, {"ext": ext_trivial_vs_simple(args.dim_z, args.nontrivial)}, []
    inputs = {"rule": rule, "dims": args.dims, "r": args.r, "quot": args.quot}
    return inputs, {"ext": keythmext_case3_general(args.dims, args.r, args.quot)}, []


def cmd_config(ctx: _Context) -> Outcome:
    store = SettingsStore()
    settings = ctx.settings
    updates = dict(ctx.args.set or [])
    if updates:
        settings = update_settings(updates, store)
    results = {"settings": settings.to_dict(), "settings_file": str(store.settings_file)}
    return {"set": updates}, results, []


def _add_system(p: argparse.ArgumentParser) -> None:
    p.add_argument("type", help="Cartan type, A-G")
    p.add_argument("rank", type=int, help="rank")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockade",
        description="Exact Ext^1 and block computations for modules of twisted forms.",
    )
    parser.add_argument("--version", action="version", version=get_version_string())
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (twice for debug output)")
    parser.add_argument("-q", "--quiet", action="store_true", help="log errors only")
    parser.add_argument("--pretty", action="store_true", default=None, help="print a table instead of JSON")
    parser.add_argument("--pdf", metavar="FILE", help="also write the report as a PDF")
    parser.add_argument("--workers", type=int, choices=range(1, BlockadeConstants.MAX_WORKERS + 1),
                        metavar="N", help="threads for batch evaluation")
    sub = parser.add_subparsers(dest="command", metavar="<subcommand>")
    sub.required = True

    p = sub.add_parser("roots", help="root system data")
    _add_system(p)
    p.set_defaults(handler=cmd_roots)

    p = sub.add_parser("dim", help="Weyl dimension of L(lam)")
    _add_system(p)
    p.add_argument("--lam", type=_weight_arg, required=True)
    p.set_defaults(handler=cmd_dim)

    p = sub.add_parser("freudenthal", help="weight multiplicities of L(lam)")
    _add_system(p)
    p.add_argument("--lam", type=_weight_arg, required=True)
    p.set_defaults(handler=cmd_freudenthal)

    p = sub.add_parser("tensor", help="decompose L(lam) (x) L(mu)")
    _add_system(p)
    p.add_argument("--lam", type=_weight_arg, required=True)
    p.add_argument("--mu", type=_weight_arg, required=True)
    p.set_defaults(handler=cmd_tensor)

    p = sub.add_parser("prv", help="adjoint multiplicity c(lam, mu)")
    _add_system(p)
    p.add_argument("--lam", type=_weight_arg, required=True)
    p.add_argument("--mu", type=_weight_arg, required=True)
    p.add_argument("--oracle", action="store_true", help="also compute c from the full tensor product")
    p.set_defaults(handler=cmd_prv)

    p = sub.add_parser("ext", help="dim Ext^1 between evaluation modules")
    _add_system(p)
    p.add_argument("--space", required=True, metavar="S.json")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--e", metavar="E.json")
    group.add_argument("--pairs", metavar="P.json")
    group.add_argument("--all", metavar="M.json")
    p.add_argument("--f", metavar="F.json")
    p.set_defaults(handler=cmd_ext)

    p = sub.add_parser("blocks", help="partition modules into blocks")
    _add_system(p)
    p.add_argument("--space", required=True, metavar="S.json")
    p.add_argument("--modules", required=True, metavar="M.json")
    p.set_defaults(handler=cmd_blocks)

    p = sub.add_parser("chain", help="shortest linkage chain between two modules")
    _add_system(p)
    p.add_argument("--space", required=True, metavar="S.json")
    p.add_argument("--e", required=True, metavar="E.json")
    p.add_argument("--f", required=True, metavar="F.json")
    p.add_argument("--bound", type=int, choices=range(1, BlockadeConstants.MAX_CHAIN_BOUND + 1), metavar="N")
    p.set_defaults(handler=cmd_chain)

    p = sub.add_parser("margaux", help="block of Margaux algebra modules")
    p.add_argument("--modules", required=True, metavar="M.json")
    p.set_defaults(handler=cmd_margaux)

    p = sub.add_parser("extcalc", help="Ext^1 rules for abelian, reductive and direct-sum algebras")
    rules = p.add_subparsers(dest="rule", metavar="<rule>")
    rules.required = True
    r = rules.add_parser("abelian", help="abelian Lie algebra")
    r.add_argument("dim_z", type=_abelian_dimension_arg, metavar="DIMZ")
    r.add_argument("lam_label", metavar="LAM")
    r.add_argument("mu_label", metavar="MU")
    r = rules.add_parser("reductive", help="reductive Lie algebra Z + S")
    r.add_argument("dim_z", type=_dimension_arg, metavar="DIMZ")
    r.add_argument("center_a", metavar="CENTER_A")
    r.add_argument("center_b", metavar="CENTER_B")
    r.add_argument("--type", help="Cartan type of S")
    r.add_argument("--rank", type=int, help="rank of S")
    r.add_argument("--wa", type=_weight_arg, help="highest weight of the S-part of A")
    r.add_argument("--wb", type=_weight_arg, help="highest weight of the S-part of B")
    r = rules.add_parser("trivial", help="trivial module against a simple module")
    r.add_argument("dim_z", type=_dimension_arg, metavar="DIMZ")
    kind = r.add_mutually_exclusive_group(required=True)
    kind.add_argument("--nontrivial", dest="nontrivial", action="store_true")
    kind.add_argument("--trivial", dest="nontrivial", action="store_false")
    r = rules.add_parser("case3", help="Ext^1 from factorwise data")
    r.add_argument("--dims", type=_int_list_arg, required=True)
    r.add_argument("--r", type=int, required=True)
    r.add_argument("--quot", type=_dimension_arg, required=True)
    p.set_defaults(handler=cmd_extcalc)

    p = sub.add_parser("config", help="show or change settings")
    p.add_argument("--set", action="append", type=_setting_arg, metavar="KEY=VALUE",
                   help="store a setting in the settings file (VALUE is JSON, e.g. workers=4, pretty=true)")
    p.set_defaults(handler=cmd_config)

    return parser


def _check_usage(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == "ext" and args.e and not args.f:
        parser.error("ext: --e requires --f")
    if args.command == "ext" and args.f and not args.e:
        parser.error("ext: --f is only valid with --e")
    if args.command == "extcalc" and args.rule == "reductive":
        has_weight = args.wa is not None or args.wb is not None
        if has_weight and (args.type is None or args.rank is None):
            parser.error("extcalc reductive: --wa/--wb need --type and --rank")


def configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s", force=True)


def _emit(report: Report, pretty: bool) -> None:
    sys.stdout.write(render_pretty(report) if pretty else report.to_json())
    sys.stdout.flush()


def run(argv: Sequence[str]) -> int:
    """Execute one command line and return the exit status."""
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_usage(parser, args)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else BlockadeConstants.EXIT_USAGE_ERROR
        return code

    configure_logging(args.verbose, args.quiet)
    settings = get_settings()
    configure_cache(settings.cache_limit)
    pretty = settings.pretty if args.pretty is None else args.pretty
    ctx = _Context(args, settings)

    try:
        inputs, results, raw_files = args.handler(ctx)
        report = Report.build(argv, inputs, results, raw_files)
        if args.pdf:
            ReportPDFGenerator().write(report, args.pdf)
    except (BlockadeError, ValueError) as e:
        logger.error(f"{args.command}: {e}")
        _emit(Report.for_error(argv, e), pretty)
        return BlockadeConstants.EXIT_DOMAIN_ERROR

    _emit(report, pretty)
    return BlockadeConstants.EXIT_OK
