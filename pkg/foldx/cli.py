import argparse
import logging
import sys
import typing

import torch

from foldx import arrays, codes, ddcs, experiments, shapes, sidon
from foldx._version import __version__
from foldx.errors import FoldxError
from foldx.fields import make_field
from foldx.foldings import Direction, FoldedRow, all_directions, is_folding
from foldx.lattices import Lattice, Shape, Tiling

logger = logging.getLogger(__name__)

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def _ints(text: str) -> typing.Tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated list of integers!")


def _bits(text: str) -> torch.Tensor:
    if not text or any(c not in '01' for c in text):
        raise argparse.ArgumentTypeError(f"{text!r} is not a bit string!")
    return torch.tensor([int(c) for c in text], dtype=torch.int64)


def _rows(text: str) -> typing.Tuple[typing.Tuple[int, ...], ...]:
    rows = tuple(_ints(row) for row in text.split(';'))
    if any(len(row) != len(rows) for row in rows):
        raise argparse.ArgumentTypeError(f"{text!r} is not a square basis!")
    return rows


def _direction_arg(text: str) -> Direction:
    try:
        return Direction(_ints(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _polygon(text: str) -> typing.Tuple[int, float, float]:
    # "n,radius[,rotation]"
    parts = text.split(',')
    try:
        if len(parts) not in (2, 3):
            raise ValueError
        return int(parts[0]), float(parts[1]), float(parts[2]) if len(parts) == 3 else 0.0
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not n,radius[,rotation]!")


def _lattice(args: argparse.Namespace) -> Lattice:
    if args.basis:
        return Lattice(args.basis)
    return Lattice.load(args.lattice)


def _tiling(args: argparse.Namespace) -> Tiling:
    lattice = _lattice(args)
    if args.shape:
        return Tiling(lattice, Shape.load(args.shape))
    if args.compact:
        return Tiling(lattice, shapes.compact_tile(lattice))
    return Tiling.standard(lattice)


def _direction(given: Direction, out: typing.List[str]) -> Direction:
    direction, negated = given.canonical()
    if negated:
        out.append(f"# direction {given} negated to {direction}")
    return direction


def _folded(args: argparse.Namespace, out: typing.List[str]) -> FoldedRow:
    return FoldedRow.walk(_tiling(args), _direction(args.dir, out))


def cmd_lattice(args: argparse.Namespace, out: typing.List[str]) -> int:
    lattice = _lattice(args)
    out.append(lattice.dumps().rstrip('\n'))
    out.append(f"volume {lattice.volume}")
    out.append("hermite " + '; '.join(' '.join(map(str, row)) for row in lattice.hermite_form))
    return 0


def cmd_shape(args: argparse.Namespace, out: typing.List[str]) -> int:
    if args.kind == 'box':
        shape = shapes.box(args.dims)
    elif args.kind == 'hexagon':
        shape = shapes.hexagon_shape(args.alpha, args.beta)
    elif args.kind == 'polygon':
        shape = shapes.raster_polygon(args.n, args.radius, args.rotation)
    elif args.kind == 'circle':
        shape = shapes.raster_circle(args.radius)
    else:
        shape = shapes.compact_tile(_lattice(args))
    out.append(shape.dumps().rstrip('\n'))
    return 0


def cmd_fold(args: argparse.Namespace, out: typing.List[str]) -> int:
    folded = _folded(args, out)
    out.append(f"folded-row along {folded.direction}, {len(folded)} points")
    out += [' '.join(map(str, p)) for p in folded.order]
    return 0


def cmd_check(args: argparse.Namespace, out: typing.List[str]) -> int:
    lattice = _lattice(args)
    if args.dir is None:
        directions = all_directions(lattice.dim)
    else:
        directions = [_direction(args.dir, out)]
    for direction in directions:
        out.append(f"{direction} folding: {'yes' if is_folding(lattice, direction) else 'no'}")
    return 0


def cmd_sidon(args: argparse.Namespace, out: typing.List[str]) -> int:
    if args.action == 'bose':
        seq = sidon.bose(args.q)
        out.append(f"n={seq.n} m={seq.m}")
        out.append(' '.join(map(str, seq)))
        return 0
    ok = sidon.verify_b2(args.n, args.elements)
    out.append(f"B2: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def _region(args: argparse.Namespace) -> Shape:
    if args.region is not None:
        return shapes.box(args.region)
    if args.region_file is not None:
        return Shape.load(args.region_file)
    if args.circle is not None:
        return shapes.raster_circle(args.circle)
    return shapes.raster_polygon(*args.polygon)


def cmd_ddc(args: argparse.Namespace, out: typing.List[str]) -> int:
    marks = sidon.bose(args.q)
    if args.action == 'fold':
        tiling = _tiling(args)
        dots = ddcs.fold_b2(tiling.lattice, tiling.shape, _direction(args.dir, out), marks)
        ok = ddcs.verify_ddc(dots)
        out.append(dots.dumps().rstrip('\n'))
        out.append(f"ddc: {'yes' if ok else 'no'}, {len(dots)} dots, sqrt reference {ddcs.sqrt_reference(tiling.shape):.2f}")
        return 0 if ok else 1
    pattern = ddcs.InfiniteDDC(_folded(args, out), marks)
    region = _region(args)
    t, count = ddcs.find_rich_copy(pattern, region)
    floor = ddcs.rich_copy_floor(pattern, region)
    out.append(f"offset {' '.join(map(str, t))} holds {count} dots, floor {floor}, "
               f"sqrt reference {ddcs.sqrt_reference(region):.2f}")
    return 0 if count >= floor else 1


def _code(args: argparse.Namespace, out: typing.List[str]) -> codes.BurstCode:
    if args.box:
        geometry = codes.BoxGeometry(args.box)
    else:
        if args.dir is None:
            raise ValueError("a folded geometry needs --dir!")
        geometry = codes.FoldedGeometry(_folded(args, out))
    return codes.build_code(geometry, args.m)


def cmd_ecc(args: argparse.Namespace, out: typing.List[str]) -> int:
    code = _code(args, out)
    if args.action == 'build':
        r, trivial = codes.redundancy_report(code)
        out.append(f"n={code.length} r={r} trivial_bound={trivial} rank={code.rank} info={code.info_length}")
        out += [''.join(map(str, row.tolist())) for row in code.H]
        return 0
    if args.action == 'encode':
        out.append(''.join(map(str, code.encode(args.info).tolist())))
        return 0
    if args.action == 'decode':
        report = code.decode(args.word)
        out.append(str(report))
        return 1 if report.kind == codes.ErrorKind.UNCORRECTABLE else 0
    report = codes.verify_code(code, args.seed)
    out.append(str(report))
    ok = report.decode_ok and report.distinct_syndromes == report.patterns
    return 0 if ok else 1


def cmd_pra(args: argparse.Namespace, out: typing.List[str]) -> int:
    if args.action == 'fold':
        seq = arrays.m_sequence(args.k)
        tiling = _tiling(args)
        pattern = arrays.fold_sequence(tiling.lattice, tiling.shape, _direction(args.dir, out), seq.bits)
        out.append(pattern.dumps().rstrip('\n'))
        return 0
    pattern = arrays.pseudo_random_array(args.k1, args.k2)
    ok = arrays.check_window_property(pattern, args.k1, args.k2)
    out.append(pattern.dumps().rstrip('\n'))
    out.append(f"window property: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def cmd_experiment(args: argparse.Namespace, out: typing.List[str]) -> int:
    if args.action == 'minimal':
        volume = experiments.minimal_volume(2, args.max_volume)
        if volume is None:
            out.append(f"no lattice of volume <= {args.max_volume} has 4 distinct folded-rows")
        else:
            out.append(f"minimal volume with 4 distinct folded-rows: {volume}")
        return 0
    if args.action == 'corpus':
        conf = experiments.Corpus.Planar if args.dim == 2 else experiments.Corpus.Spatial
        conf = experiments.CorpusConfig(conf.dim, conf.count, conf.max_volume, conf.max_entry, args.seed)
        report = experiments.predicate_corpus(conf)
        out.append(str(report))
        return 0 if not report.mismatches else 1
    best, witness = experiments.best_row_count(args.dim, args.max_volume)
    out.append(f"best {best} of {(3 ** args.dim - 1) // 2} distinct folded-rows up to volume {args.max_volume}")
    if witness is not None:
        out.append("basis " + '; '.join(','.join(map(str, row)) for row in witness.basis))
    return 0


def cmd_field(args: argparse.Namespace, out: typing.List[str]) -> int:
    out.append(str(make_field(args.p, args.k)))
    return 0


def _geometry_parent(required: bool) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_mutually_exclusive_group(required=required)
    group.add_argument('--lattice', help="lattice file")
    group.add_argument('--basis', type=_rows, help="inline basis, rows separated by ';', e.g. '3,2;7,1'")
    parent.add_argument('--shape', help="shape file; defaults to the Hermite box of the lattice")
    parent.add_argument('--compact', action='store_true', help="use the compact tile of the lattice")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='foldx', description="Lattice foldings of sequences into shapes.")
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('-v', '--verbose', action='count', default=0)
    parser.add_argument('--out', help="write results to this file instead of stdout")
    parser.add_argument('--seed', type=int, default=0)
    sub = parser.add_subparsers(dest='command', required=True)
    geometry = _geometry_parent(required=True)

    p = sub.add_parser('lattice', parents=[geometry])
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser('shape')
    kinds = p.add_subparsers(dest='kind', required=True)
    k = kinds.add_parser('box')
    k.add_argument('--dims', type=_ints, required=True)
    k = kinds.add_parser('hexagon')
    k.add_argument('--alpha', type=int, required=True)
    k.add_argument('--beta', type=int, required=True)
    k = kinds.add_parser('polygon')
    k.add_argument('--n', type=int, required=True)
    k.add_argument('--radius', type=float, required=True)
    k.add_argument('--rotation', type=float, default=0.0)
    k = kinds.add_parser('circle')
    k.add_argument('--radius', type=float, required=True)
    kinds.add_parser('tile', parents=[geometry])
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser('fold', parents=[geometry])
    p.add_argument('--dir', type=_direction_arg, required=True)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser('check', parents=[geometry])
    p.add_argument('--dir', type=_direction_arg, help="defaults to every canonical direction")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('sidon')
    actions = p.add_subparsers(dest='action', required=True)
    a = actions.add_parser('bose')
    a.add_argument('--q', type=int, required=True)
    a = actions.add_parser('verify')
    a.add_argument('--n', type=int, required=True)
    a.add_argument('elements', type=int, nargs='+')
    p.set_defaults(func=cmd_sidon)

    p = sub.add_parser('ddc')
    actions = p.add_subparsers(dest='action', required=True)
    for name in ('fold', 'rich'):
        a = actions.add_parser(name, parents=[geometry])
        a.add_argument('--dir', type=_direction_arg, required=True)
        a.add_argument('--q', type=int, required=True)
        if name == 'rich':
            regions = a.add_mutually_exclusive_group(required=True)
            regions.add_argument('--region', type=_ints, help="box dimensions of the region, e.g. 5,5")
            regions.add_argument('--region-file', help="shape file of the region")
            regions.add_argument('--circle', type=float, help="radius of a rasterized circle")
            regions.add_argument('--polygon', type=_polygon, help="regular polygon as n,radius[,rotation]")
    p.set_defaults(func=cmd_ddc)

    p = sub.add_parser('ecc')
    actions = p.add_subparsers(dest='action', required=True)
    for name in ('build', 'encode', 'decode', 'verify'):
        a = actions.add_parser(name, parents=[_geometry_parent(required=False)])
        a.add_argument('--box', type=_ints, help="box dimensions, e.g. 5,5")
        a.add_argument('--dir', type=_direction_arg)
        a.add_argument('--m', type=int, required=True)
        if name == 'encode':
            a.add_argument('--info', type=_bits, required=True)
        if name == 'decode':
            a.add_argument('--word', type=_bits, required=True)
    p.set_defaults(func=cmd_ecc)

    p = sub.add_parser('pra')
    actions = p.add_subparsers(dest='action', required=True)
    a = actions.add_parser('fold', parents=[geometry])
    a.add_argument('--k', type=int, required=True)
    a.add_argument('--dir', type=_direction_arg, required=True)
    a = actions.add_parser('window')
    a.add_argument('--k1', type=int, required=True)
    a.add_argument('--k2', type=int, required=True)
    p.set_defaults(func=cmd_pra)

    p = sub.add_parser('experiment')
    actions = p.add_subparsers(dest='action', required=True)
    a = actions.add_parser('minimal')
    a.add_argument('--max-volume', type=int, default=10)
    a = actions.add_parser('corpus')
    a.add_argument('--dim', type=int, choices=(2, 3), default=2)
    a = actions.add_parser('search')
    a.add_argument('--dim', type=int, default=3)
    a.add_argument('--max-volume', type=int, default=20)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser('field')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--k', type=int, default=1)
    p.set_defaults(func=cmd_field)
    return parser


def run(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    logging.basicConfig(level=LOG_LEVELS[min(args.verbose, 2)], stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    if getattr(args, 'box', None) and (args.lattice or args.basis):
        print("error: --box cannot be combined with a lattice", file=sys.stderr)
        return 2
    if args.command == 'ecc' and not (args.box or args.lattice or args.basis):
        print("error: one of --box, --lattice or --basis is required", file=sys.stderr)
        return 2
    out = []
    try:
        code = args.func(args, out)
    except (FoldxError, ValueError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 1
    text = '\n'.join(out) + '\n'
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
