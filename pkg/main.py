# imports
import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional

from core.errors import ConfigError, NumericalError, OutputError, ValidationError
from core.model import UnitMode
from pipe.commands import run_command
from pipe.recipes import RECIPES, list_recipes, run_recipe
from utils.config import Command, OutputFormat, parse_config

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


@dataclass
class CliArgs:
    action: str
    config: Optional[str] = None
    recipe: Optional[str] = None
    out: Optional[str] = None
    format: Optional[str] = None
    seed: Optional[int] = None
    units: Optional[str] = None
    quiet: bool = False


def _add_output_options(parser: argparse.ArgumentParser):
    parser.add_argument('--out', type=str, default=None,
                        help='directory to write the data files and the config sidecar to')
    parser.add_argument('--format', type=str, default=None,
                        help='comma separated subset of csv,json,gnuplot')
    parser.add_argument('--quiet', action='store_true',
                        help='If set: no banners and no progress bars')


def parse_args(argv: Optional[List[str]] = None) -> CliArgs:
    parser = argparse.ArgumentParser(description='Negative energy curvature simulations and figure data')
    actions = parser.add_subparsers(dest='action', required=True)

    for command in Command:
        sub = actions.add_parser(command.value, help=f'run a {command.value} config')
        sub.add_argument('--config', type=str, required=True,
                         help='path to the YAML run config')
        sub.add_argument('--seed', type=int, default=None,
                         help='seed for randomly placed array units (overrides the config)')
        sub.add_argument('--units', type=str, default=None, choices=[u.value for u in UnitMode],
                         help='unit system for G and c (overrides the config)')
        _add_output_options(sub)

    recipe = actions.add_parser('recipe', help='reproduce the data behind one figure')
    recipe.add_argument('recipe', type=str, choices=list(RECIPES),
                        help='name of the recipe, see list-recipes')
    _add_output_options(recipe)

    actions.add_parser('list-recipes', help='print the available recipes')

    return CliArgs(**vars(parser.parse_args(argv)))


def _formats(text: Optional[str]) -> Optional[List[OutputFormat]]:
    if text is None:
        return None
    try:
        return [OutputFormat(f.strip()) for f in text.split(",") if f.strip()]
    except ValueError:
        raise ConfigError(f"--format must be a subset of csv,json,gnuplot, got '{text}'")


def run(args: CliArgs) -> int:
    if args.action == 'list-recipes':
        for name, description in list_recipes():
            print(f"{name:14s} {description}")
        return EXIT_OK

    formats = _formats(args.format)
    if args.action == 'recipe':
        output = run_recipe(args.recipe, args.out or "out", formats, args.quiet)
        if not args.quiet:
            print(f"wrote {len(output.files)} files")
        return EXIT_OK

    config = parse_config(args.config)
    if config.command.value != args.action:
        raise ConfigError(f"{args.config} configures '{config.command.value}', not '{args.action}'")
    overrides = {"output_dir": args.out, "formats": formats, "seed": args.seed,
                 "units": UnitMode(args.units) if args.units else None}
    for name, value in overrides.items():
        if value is not None:
            setattr(config, name, value)
            if name in config.defaulted:
                config.defaulted.remove(name)
    output = run_command(config, quiet=args.quiet)
    if not args.quiet:
        print(f"wrote {len(output.files)} files")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    try:
        return run(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OutputError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
