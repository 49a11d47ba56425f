import argparse
import sys
from pprint import pprint


class CustomArgumentParser(
    argparse.ArgumentParser
):
    def __init__(self, *args, error_status: int = 2, **kwargs):
        super().__init__(*args, **kwargs)
        self.error_status = error_status  # exit status of rejected arguments

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(self.error_status,
                  f"{self.prog}: error: {message}\nUse 'python {self.prog} --help' to see available options.\n")


class CustomFormatter(
    argparse.ArgumentDefaultsHelpFormatter,
    argparse.RawTextHelpFormatter
):
    def _get_default_metavar_for_optional(self, action):
        return action.dest

    def _get_help_string(self, action) -> str:
        help_str = action.help or ""
        if "%(default)" not in help_str and action.default is not argparse.SUPPRESS:
            default = action.default
            if isinstance(default, list | tuple):
                default = " ".join(str(x) for x in default)
            return f"{help_str} (default: {default})"
        return help_str


def parse_triplet(
        value: str | list | tuple
) -> tuple[float, float, float]:
    """ "30,10,50" or [30, 10, 50] -> (30., 10., 50.) """
    if isinstance(value, str):
        value = [v for v in value.replace(" ", "").split(",") if v]

    try:
        triplet = tuple(float(v) for v in value)
    except (TypeError, ValueError):
        raise ValueError(f'Expected three comma-separated numbers but got "{value}"')

    if len(triplet) != 3:
        raise ValueError(f'Expected three comma-separated numbers but got "{value}"')

    return triplet


def sigma_triplet(
        value: str
) -> tuple[float, float, float]:
    """argparse type for "--sigma r,g,b"."""
    try:
        triplet = parse_triplet(value)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))

    if any(s < 0. for s in triplet):
        raise argparse.ArgumentTypeError(f'Noise levels must be nonnegative but are "{value}"')

    return triplet


def inplace_process_nargs1_args(
        parser: argparse.ArgumentParser,
        args: argparse.Namespace
) -> None:
    """
    Function to process arguments with nargs=1.
    Converts nargs=1 arguments from lists to single values.
    """
    for action in parser._actions:
        if hasattr(args, action.dest) and action.nargs == 1:
            value = getattr(args, action.dest)
            if isinstance(value, list):
                setattr(args, action.dest, value[0])


def print_args(
        args: argparse.Namespace
) -> None:
    pprint(vars(args))
    print("")


def farewell() -> None:
    print("\nAll done, bye.")
