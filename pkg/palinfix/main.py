import argparse
import logging
import sys
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as get_version

from palinfix.core import config as core_config

log_format = "%(asctime)s - %(levelname)s - %(message)s"
logger = logging.getLogger(__name__)


def setup_logging(level: str = "INFO") -> None:
    """Logs to palinfix.log in the config dir and to stderr; stdout stays clean."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    numeric = getattr(logging, str(level).upper(), logging.INFO)
    try:
        log_file_path = core_config.get_config_dir() / "palinfix.log"
        log_file_path.parent.mkdir(parents=True, exist_ok=True)
        logging.basicConfig(
            level=numeric,
            format=log_format,
            handlers=[logging.FileHandler(log_file_path), logging.StreamHandler(sys.stderr)],
            force=True,
        )
    except Exception as e:
        # Fallback basic logging if file handler fails
        logging.basicConfig(level=logging.WARNING, format=log_format, force=True)
        logging.critical(f"Failed to configure file logging: {e}")


def _add_spec_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("spec", nargs="?", help="Directive-function spec (JSON file)")
    parser.add_argument(
        "--preset",
        help="Named spec instead of a file: fibonacci, tribonacci, constant, doubled-prev, "
        "abacaba, sturmian:<s>, episturmian:<delta>, psi-n:<n>",
    )


def _add_output(parser: argparse.ArgumentParser, what: str = "report") -> None:
    parser.add_argument("-o", "--output", help=f"Write the {what} here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palinfix",
        description="palinfix - palindromic prefixes, directive functions and Sturmian densities",
    )
    parser.add_argument("--version", action="store_true", help="Show version information")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default from config)")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    # generate
    p = commands.add_parser("generate", help="Generate the word of a directive function")
    _add_spec_input(p)
    p.add_argument("--length", type=int, default=100, help="Number of letters (default 100)")
    p.add_argument("--emit", choices=("word", "profile", "both"), default="word")
    p.add_argument("--output-dir", help="Write word.txt / profile.csv into this directory")

    # delta
    p = commands.add_parser("delta", help="Estimate delta for a spec or a word file")
    _add_spec_input(p)
    p.add_argument("--word", help="Plain-text word file instead of a spec")
    p.add_argument("--burn-in", type=int, help="Ratios to skip (default from config)")
    p.add_argument("--window", type=int, help="Ratios in the supremum window (default from config)")
    _add_output(p)

    # check
    p = commands.add_parser("check", help="Check reducedness and strictness of a spec")
    _add_spec_input(p)
    p.add_argument("--horizon", type=int, default=1000, help="Index horizon for tails without a regime")
    p.add_argument("--alphabet", help="Also test strictness over these letters, e.g. abc")
    _add_output(p)

    # recover
    p = commands.add_parser("recover", help="Recover the reduced directive function of a word")
    p.add_argument("--word", required=True, help="Plain-text word file")
    _add_output(p, "spec JSON")

    # first-letters
    p = commands.add_parser("first-letters", help="Print the word of first letters")
    _add_spec_input(p)
    p.add_argument("--count", type=int, default=50)
    _add_output(p, "letters")

    # scan
    p = commands.add_parser("scan", help="Scan Sturmian delta values inside an interval")
    p.add_argument("--max-entry", type=int, default=3)
    p.add_argument("--max-period", type=int, default=6)
    p.add_argument("--max-preperiod", type=int, default=3)
    p.add_argument("--lo", default="sqrt(3)", help="Lower end: rational, decimal or (a+b*sqrt(d))/c")
    p.add_argument("--hi", default="(7+sqrt(13))/6", help="Upper end, same syntax")
    p.add_argument("--inclusive", action="store_true", help="Also report the endpoints")
    _add_output(p, "CSV")

    # verify
    p = commands.add_parser("verify", help="Run a randomised verification suite")
    from .services.suites import suite_names

    p.add_argument("--suite", required=True, choices=suite_names() + ["all"])
    p.add_argument("--seed", type=int, help="Base seed (default from config)")
    p.add_argument("--cases", type=int, help="Number of cases (default from config)")
    p.add_argument("--threads", type=int, help="Worker threads (0 = all cores)")
    p.add_argument("--tolerance", type=float, help="Numeric tolerance (default from config)")
    p.add_argument("--counterexample", help="Write the first counterexample JSON here")

    # diagnostics
    p = commands.add_parser("diagnostics", help="Check the growth and contraction inequalities")
    _add_spec_input(p)
    p.add_argument("--count", type=int, default=200, help="Number of lengths to examine")
    p.add_argument("--trace", help="Write the alpha trajectory CSV here")
    _add_output(p)

    # config
    p = commands.add_parser("config", help="Show or edit the configuration file")
    p.add_argument("action", choices=("show", "set"))
    p.add_argument("values", nargs="*", metavar="SECTION KEY VALUE")

    return parser


def parse_args(argv=None):
    """Parse command line arguments."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "config" and args.action == "set" and len(args.values) != 3:
        parser.error("config set needs SECTION KEY VALUE")
    if args.command is None and not args.version:
        parser.print_help(sys.stderr)
        parser.exit(2)
    return args


def main(argv=None) -> int:
    """Main entry point for palinfix."""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if args.version:
        try:
            print(f"palinfix version {get_version('palinfix')}")
        except PackageNotFoundError:
            from palinfix import __version__

            print(f"palinfix version {__version__} (not installed)")
        return 0

    setup_logging(args.log_level or core_config.get_setting("Run", "log_level", fallback="INFO"))
    logger.debug(f"Command line: {argv if argv is not None else sys.argv[1:]}")

    from .batch import RUNNERS

    return RUNNERS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
