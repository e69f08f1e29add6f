from typing import (
    Any,
    Dict,
    List,
    Optional,
)

import argparse
import sys
import logging
import pandas as pd

from mcg_certs.certificates.cover import degree_for_genus
from mcg_certs.core import CertificationEngine
from mcg_certs.utils.config import (
    RunConfig,
    parse_range,
)
from mcg_certs.utils.constants import (
    DEFAULT_SEED,
    DEFAULT_SPREAD_OFFSET,
    EXIT_FALLBACK,
    EXIT_INPUT_ERROR,
    EXIT_INVARIANT,
    EXIT_OK,
    PAPER_INT_SUM,
    SPREAD_OFFSETS,
)
from mcg_certs.utils.errors import (
    CertificationError,
    FallbackRegime,
    InvariantViolation,
)
from mcg_certs.utils.serialization import (
    dump_json,
    load_matrix,
    stringify_numbers,
    write_output,
)


logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


COMMANDS = ("witness", "cover", "paper-example", "spread", "orbit-sum", "surjectivity-sanity")
DEFAULT_FORMATS = {
    "witness": "json",
    "cover": "json",
    "paper-example": "text",
    "spread": "csv",
    "orbit-sum": "json",
    "surjectivity-sanity": "json",
}


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for randomized inputs; recorded in every output.")
    common.add_argument("--output", type=str, default=None, help="Output path (stdout when omitted).")
    common.add_argument("--format", dest="output_format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--workers", type=int, default=1, help="Worker processes for sweeps (0 = auto).")
    common.add_argument("--verbose", action="store_true", help="Debug logging.")

    parser = _ArgumentParser(
        description="Exact certificates for homology actions of mapping classes."
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    witness = subparsers.add_parser("witness", parents=[common], help="Lefschetz lower-bound certificate.")
    source = witness.add_mutually_exclusive_group(required=True)
    source.add_argument("--matrix", type=str, help="Matrix JSON file ({rows, cols, entries}).")
    source.add_argument("--random-genus", type=int, help="Use a seeded planted-block symplectic matrix of this genus.")
    witness.add_argument("--k", type=int, required=True, help="Fixed-subspace rank to certify with.")

    cover = subparsers.add_parser("cover", parents=[common], help="Cyclic-cover lift checks per degree.")
    degrees = cover.add_mutually_exclusive_group()
    degrees.add_argument("--degree-range", type=str, default="2..10", help="Degrees A..B.")
    degrees.add_argument("--genus-range", type=str, default=None, help="Cover genera A..B (degree g - 1).")
    cover.add_argument("--torelli-variant", action="store_true", help="Lift T_beta T_{phi beta}^-1 instead.")
    cover.add_argument("--include-obstructions", action="store_true", help="Attach mod-d obstruction certificates.")
    cover.add_argument("--include-matrices", action="store_true", help="Attach the lifted matrices with their basis labels.")

    paper = subparsers.add_parser("paper-example", parents=[common], help="Intersection chain and quantitative bound.")
    paper.add_argument("--genus", type=int, default=None, help="Evaluate the bound at this genus.")

    spread = subparsers.add_parser("spread", parents=[common], help="Spread bound table over a genus range.")
    spread.add_argument("--genus-range", type=str, default="580..10000", help="Genera A..B.")
    spread.add_argument("--int-sum", type=int, default=PAPER_INT_SUM, help="i(phi.beta, alpha) + i(phi.alpha, alpha).")
    spread.add_argument("--offset", type=int, choices=list(SPREAD_OFFSETS), default=DEFAULT_SPREAD_OFFSET)

    orbit = subparsers.add_parser("orbit-sum", parents=[common], help="Orbit-sum subspace on a cyclic shift.")
    orbit.add_argument("--n", type=int, required=True)
    orbit.add_argument("--k", type=int, required=True)
    orbit.add_argument("--vector", choices=["e0", "ones"], default="e0")

    subparsers.add_parser("surjectivity-sanity", parents=[common], help="SL(2, Z) -> SL(2, Z/2) reachability.")

    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    command = args.command
    kwargs: Dict[str, Any] = dict(
        command=command,
        seed=args.seed,
        output=args.output,
        output_format=args.output_format or DEFAULT_FORMATS[command],
        workers=args.workers,
    )
    if command == "witness":
        kwargs.update(matrix_path=args.matrix, random_genus=args.random_genus, k=args.k)
    elif command == "cover":
        if args.genus_range:
            low, high = parse_range(args.genus_range)
            degree_range = (degree_for_genus(low), degree_for_genus(high))
        else:
            degree_range = parse_range(args.degree_range)
        kwargs.update(degree_range=degree_range, torelli_variant=args.torelli_variant)
    elif command == "paper-example":
        kwargs.update(genus=args.genus)
    elif command == "spread":
        kwargs.update(genus_range=parse_range(args.genus_range), int_sum=args.int_sum, offset=args.offset)
    elif command == "orbit-sum":
        kwargs.update(orbit_n=args.n, orbit_k=args.k)

    return RunConfig(**kwargs)


def _text(lines: List[str], seed: int) -> bytes:
    return ("\n".join(lines + [f"seed: {seed}"]) + "\n").encode("utf-8")


def _json(record: Dict[str, Any], seed: int) -> bytes:
    record = dict(stringify_numbers(record))
    record["seed"] = seed
    return dump_json(record)


def _csv(df: pd.DataFrame) -> bytes:
    return df.to_csv(index=False, lineterminator="\n").encode("utf-8")


def _emit(config: RunConfig, payload: bytes) -> None:
    write_output(payload, config.output)


def cmd_witness(config: RunConfig, engine: CertificationEngine) -> int:
    if config.matrix_path:
        M = load_matrix(config.matrix_path)
    else:
        M = engine.planted_matrix(config.random_genus, config.k)

    try:
        cert = engine.witness(M, config.k)
    except FallbackRegime as e:
        logger.warning(f"Fallback regime: {e}")
        report = {"status": "fallback", "k": config.k, "reason": str(e), "note": e.note}
        if config.output_format == "text":
            _emit(config, _text([f"status: fallback (k = {config.k})", str(e), e.note or ""], config.seed))
        else:
            _emit(config, _json(report, config.seed))
        return EXIT_FALLBACK

    if config.output_format == "text":
        _emit(config, _text(cert.summary_lines(), config.seed))
    elif config.output_format == "csv":
        _emit(config, _csv(pd.DataFrame([dict(cert.to_json_record(), seed=config.seed)])))
    else:
        _emit(config, _json(cert.to_json_record(), config.seed))

    logger.info(f"Certificate: j = {cert.witness_j}, L(f^j) = {cert.lefschetz_at_j}")
    return EXIT_OK


def cmd_cover(
    config: RunConfig,
    engine: CertificationEngine,
    include_obstructions: bool = False,
    include_matrices: bool = False,
) -> int:
    start, stop = config.degree_range
    degrees = list(range(start, stop + 1))
    if (include_obstructions or include_matrices) and config.output_format != "json":
        logger.warning("Obstructions and matrices are only attached to JSON output")
    records = engine.cover_records(degrees, config.torelli_variant)
    all_passed = all(r.passed for r in records)

    if config.output_format == "csv":
        df = pd.DataFrame([r.to_record() for r in records])
        df["seed"] = config.seed
        _emit(config, _csv(df))
    elif config.output_format == "text":
        lines = [
            f"d = {r.degree}: genus {r.cover_genus}, m = {r.m_value} (expected {r.m_expected}), "
            f"identity mod d: {r.identity_mod_d}, passed: {r.passed}"
            for r in records
        ]
        _emit(config, _text(lines, config.seed))
    else:
        report: Dict[str, Any] = {
            "torelli_variant": config.torelli_variant,
            "records": [r.to_record() for r in records],
            "all_passed": all_passed,
        }
        if include_obstructions and not config.torelli_variant:
            report["obstructions"] = [c.to_json_record() for c in engine.obstructions(degrees)]
        if include_matrices:
            report["matrices"] = engine.cover_matrices(degrees, config.torelli_variant)
        _emit(config, _json(report, config.seed))

    if not all_passed:
        logger.error("At least one cover degree failed its checks")
        return EXIT_INVARIANT

    return EXIT_OK


def cmd_paper_example(config: RunConfig, engine: CertificationEngine) -> int:
    if config.output_format == "text":
        _emit(config, _text(engine.paper_example_lines(config.genus), config.seed))
    else:
        _emit(config, _json(engine.paper_example_record(config.genus), config.seed))

    return EXIT_OK


def _spread_status(row) -> str:
    if row.available:
        return f"n* = {row.n_star}, bound = {row.bound}"
    if row.n_star != "":
        return f"unconfirmed (n* = {row.n_star}, support width {row.automaton_width} fills the cover)"

    return "unavailable"


def cmd_spread(config: RunConfig, engine: CertificationEngine) -> int:
    start, stop = config.genus_range
    df = engine.spread_table(start, stop, config.int_sum, config.offset)

    if config.output_format == "json":
        rows = df.drop(columns=["seed"]).to_dict(orient="records")
        _emit(config, _json({"rows": rows}, config.seed))
    elif config.output_format == "text":
        lines = [f"g = {row.g}: {_spread_status(row)}" for row in df.itertuples(index=False)]
        _emit(config, _text(lines, config.seed))
    else:
        _emit(config, _csv(df))

    if not df["available"].all():
        return EXIT_FALLBACK

    return EXIT_OK


def cmd_orbit_sum(config: RunConfig, engine: CertificationEngine, vector: str = "e0") -> int:
    result = engine.orbit_sum(config.orbit_n, config.orbit_k, vector)
    record = dict(result.to_record(), n=config.orbit_n, k=config.orbit_k, vector=vector, expected_dimension=2 ** config.orbit_k)

    if config.output_format == "text":
        _emit(config, _text([f"dimension = {result.dimension}", f"invariant = {result.invariant}"], config.seed))
    elif config.output_format == "csv":
        _emit(config, _csv(pd.DataFrame([dict(record, seed=config.seed)])))
    else:
        _emit(config, _json(record, config.seed))

    return EXIT_OK


def cmd_surjectivity_sanity(config: RunConfig, engine: CertificationEngine) -> int:
    result = engine.surjectivity_sanity()
    if config.output_format == "text":
        _emit(config, _text([f"reached {result.reached} of {result.expected} elements"], config.seed))
    elif config.output_format == "csv":
        # the per-element word lengths only go to JSON
        row = {key: value for key, value in result.to_record().items() if key != "first_length"}
        _emit(config, _csv(pd.DataFrame([dict(row, seed=config.seed)])))
    else:
        _emit(config, _json(result.to_record(), config.seed))

    if not result.passed:
        logger.error(f"Only {result.reached} of {result.expected} residue classes were reached")
        return EXIT_INVARIANT

    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        config = build_config(args)
        engine = CertificationEngine(seed=config.seed, workers=config.workers)

        if config.command == "witness":
            return cmd_witness(config, engine)
        if config.command == "cover":
            return cmd_cover(
                config,
                engine,
                include_obstructions=args.include_obstructions,
                include_matrices=args.include_matrices,
            )
        if config.command == "paper-example":
            return cmd_paper_example(config, engine)
        if config.command == "spread":
            return cmd_spread(config, engine)
        if config.command == "orbit-sum":
            return cmd_orbit_sum(config, engine, vector=args.vector)

        return cmd_surjectivity_sanity(config, engine)
    except FallbackRegime as e:
        logger.warning(f"{e}")
        return EXIT_FALLBACK
    except CertificationError as e:
        logger.error(f"{e}")
        return EXIT_INPUT_ERROR
    except InvariantViolation as e:
        logger.error(f"Invariant violation: {e}")
        return EXIT_INVARIANT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
