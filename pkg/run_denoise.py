import argparse
import socket
import sys
from os import path

from scr.config.naming import SEP_OUT
from scr.config.paths import PATH_DENOISED

from scr.devtools.parser import (CustomArgumentParser, CustomFormatter, inplace_process_nargs1_args, print_args,
                                 farewell, sigma_triplet, parse_triplet)
from scr.devtools.config_args import add_config_arguments, config_from_args, report_error, EXIT_OK, EXIT_CONFIG

from scr.errors import ImageReadError, SolverDivergenceError

from scr.io.manifest import load_config_file, load_manifest, config_from_manifest

from scr.pipelines.io.runs import run_denoising

from scr.utils.filesystem import stem_of


def build_parser() -> CustomArgumentParser:
    parser = CustomArgumentParser(
        prog="run_denoise.py",
        allow_abbrev=False,
        add_help=False,
        error_status=EXIT_CONFIG,
        description="Denoise a colour image with known channel noise levels.\n\n"
                    "Example:\n"
                    "  python run_denoise.py --in noisy.png --sigma 30,10,50 --preset table5b",
        formatter_class=CustomFormatter
    )

    # Input / output
    io = parser.add_argument_group("input and output")
    io.add_argument(
        "--in",
        dest="input",
        type=str,
        default=None,
        nargs=1,
        help="Noisy image (8-bit raster or float container)."
    )
    io.add_argument(
        "--sigma",
        type=sigma_triplet,
        default=None,
        nargs=1,
        help="Noise standard deviations of the r, g and b channels, e.g. 30,10,50."
    )
    io.add_argument(
        "--out",
        type=str,
        default=None,
        nargs=1,
        help=f"Output stem; .f32img, .png and .manifest.yaml are appended (default: {PATH_DENOISED}/<input>_denoised)."
    )
    io.add_argument(
        "--reference",
        type=str,
        default=None,
        nargs=1,
        help="Clean image; when given, PSNR and SSIM are stored in the manifest."
    )
    io.add_argument(
        "--from_manifest",
        type=str,
        default=None,
        nargs=1,
        help="Repeat the run recorded in a manifest (explicit flags still override it)."
    )

    add_config_arguments(parser)

    optional = parser.add_argument_group("optional arguments")
    optional.add_argument(
        "--quiet",
        action="store_true",
        help="Hide progress bars and timings."
    )
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
        manifest = load_manifest(args.from_manifest) if args.from_manifest is not None else {}
        if manifest:
            args.input = args.input or manifest.get("input")
            args.sigma = args.sigma or parse_triplet(manifest["sigma"])
            args.out = args.out or manifest.get("output_stem")
            args.reference = args.reference or manifest.get("reference")
            args.preset = manifest.get("preset") or args.preset

        if args.input is None or args.sigma is None:
            raise ValueError('"--in" and "--sigma" are required unless a manifest provides them')

        file_overrides = load_config_file(args.config) if args.config is not None else None
        base = config_from_manifest(manifest) if manifest else None
        cfg = config_from_args(args, file_overrides=file_overrides, base=base)

        out = args.out or path.join(PATH_DENOISED, f"{stem_of(args.input)}{SEP_OUT}denoised")

        run_denoising(
            input_path=args.input,
            output_stem=out,
            sigma0=args.sigma,
            cfg=cfg,
            preset=args.preset,
            reference_path=args.reference,
            threads=args.threads,
            verbose=not args.quiet
        )

    except (ImageReadError, SolverDivergenceError, ValueError, KeyError) as error:
        return report_error(parser.prog, error)

    farewell()

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
