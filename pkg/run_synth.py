import argparse
import socket
import sys
from os import path

from scr.config.naming import SEP_OUT
from scr.config.numerics import RND_SEED
from scr.config.paths import PATH_NOISY

from scr.devtools.parser import (CustomArgumentParser, CustomFormatter, inplace_process_nargs1_args, print_args,
                                 farewell, sigma_triplet)
from scr.devtools.config_args import report_error, EXIT_OK, EXIT_CONFIG

from scr.errors import ImageReadError

from scr.pipelines.io.runs import run_synthesis
from scr.pipelines.processing.synthesis import MAP_KINDS

from scr.utils.filesystem import stem_of


def build_parser() -> CustomArgumentParser:
    parser = CustomArgumentParser(
        prog="run_synth.py",
        allow_abbrev=False,
        add_help=False,
        error_status=EXIT_CONFIG,
        description="Corrupt a clean image with synthetic Gaussian noise.\n\n"
                    "Examples:\n"
                    "  python run_synth.py --in kodim01.png --sigma 20,35,5 --seed 7\n"
                    "  python run_synth.py --in kodim01.png --sigma 30,35,40 --map peaks",
        formatter_class=CustomFormatter
    )

    # Required arguments
    required = parser.add_argument_group("required arguments")
    required.add_argument(
        "--in",
        dest="input",
        type=str,
        required=True,
        nargs=1,
        help="Clean image."
    )
    required.add_argument(
        "--sigma",
        type=sigma_triplet,
        required=True,
        nargs=1,
        help="Noise standard deviations of the r, g and b channels, e.g. 30,10,50."
    )

    # Noise settings
    noise = parser.add_argument_group("noise settings")
    noise.add_argument(
        "--map",
        type=str,
        choices=MAP_KINDS,
        default="none",
        nargs=1,
        help="Spatial modulation of the noise level."
    )
    noise.add_argument(
        "--seed",
        type=int,
        default=RND_SEED,
        nargs=1,
        help="Seed of the noise generator."
    )
    noise.add_argument(
        "--out",
        type=str,
        default=None,
        nargs=1,
        help=f"Output stem; .f32img, .png and .manifest.yaml are appended (default: {PATH_NOISY}/<input>_noisy)."
    )

    optional = parser.add_argument_group("optional arguments")
    optional.add_argument(
        "-h", "--help",
        action="help",
        default=argparse.SUPPRESS,
        help="Show this help message and exit."
    )

    return parser


def main(
        argv: list[str] | None = None
) -> int:
    hostname = socket.gethostname()
    print(f"Running on: {hostname}\n")

    parser = build_parser()
    args = parser.parse_args(argv)

    # convert list[arg] to arg
    inplace_process_nargs1_args(
        parser=parser,
        args=args
    )

    print_args(args)

    try:
        out = args.out or path.join(PATH_NOISY, f"{stem_of(args.input)}{SEP_OUT}noisy")

        manifest = run_synthesis(
            input_path=args.input,
            output_stem=out,
            sigma0=args.sigma,
            map_kind=args.map,
            seed=args.seed
        )

    except (ImageReadError, ValueError) as error:
        return report_error(parser.prog, error)

    print(f"Equivalent sigma: {manifest['noise.equivalent_sigma']:.4f}")
    if args.map != "none":
        print("Mean sigma per channel: " + ", ".join(f"{manifest[f'noise.map_mean_sigma_{c}']:.4f}" for c in "rgb"))

    farewell()

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
