"""``texbench`` command line.

Exit codes: 0 success, 1 domain error (``error: <kind>: <detail>`` on
stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import perturb as _perturb
from .bench import METHODS, BenchConfig, accuracy_experiment, emit_report
from .classify import ENERGY_MODES, Extractor, FeatureDatabase, build_database, classify
from .errors import TexbenchError
from .glcm import directional_glcms, glcm_energy
from .raster import CorpusSpec, parse_kind, read_pgm, save_pgm, synth_texture
from .wavelet import WAVELETS, decompose


def _write(data: bytes, out) -> None:
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _extractor(args) -> Extractor:
    if args.scheme == "glcm-4":
        return Extractor("glcm-4", levels=args.levels, normalize=not args.raw)
    return Extractor("wavelet-7", wavelet=args.wavelet, mode=args.mode)


# --------------------------------------------------------------------------
# subcommands

def cmd_synth(args) -> int:
    img = synth_texture(parse_kind(args.kind), args.size, args.seed)
    _write(save_pgm(img), args.out)
    return 0


def cmd_perturb(args) -> int:
    if args.noise is None and not args.equalize and args.rotate is None:
        args.parser.error("give at least one of --noise, --equalize, --rotate")
    img = read_pgm(args.image)
    if args.noise is not None:
        img = _perturb.salt_pepper(img, args.noise, args.seed)
    if args.equalize:
        img = _perturb.hist_equalize(img)
    if args.rotate is not None:
        img = _perturb.rotate(img, args.rotate)
    _write(save_pgm(img), args.out)
    return 0


def cmd_decompose(args) -> int:
    from .classify import subband_energy

    dec = decompose(read_pgm(args.image), args.wavelet, args.levels)
    lines = ["level,subband,rows,cols," + ",".join(ENERGY_MODES)]

    def emit(level, name, band):
        energies = ",".join(format(subband_energy(band, m), ".10g") for m in ENERGY_MODES)
        lines.append(f"{level},{name},{band.rows},{band.cols},{energies}")

    for i, lvl in enumerate(dec.levels, start=1):
        emit(i, "cH", lvl.cH)
        emit(i, "cV", lvl.cV)
        emit(i, "cD", lvl.cD)
    emit(len(dec.levels), "cA", dec.final_cA)
    _write(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def cmd_glcm(args) -> int:
    gl = directional_glcms(read_pgm(args.image), args.levels)
    values = [format(glcm_energy(g, normalize=not args.raw), ".10g") for g in gl]
    _write(("deg0,deg45,deg90,deg135\n" + ",".join(values) + "\n").encode(), args.out)
    return 0


def cmd_build_db(args) -> int:
    items = []
    for spec in args.items:
        label, sep, path = spec.partition("=")
        if not sep or not label or not path:
            args.parser.error(f"expected label=image.pgm, got {spec!r}")
        items.append((label, read_pgm(path)))
    db = build_database(items, _extractor(args))
    _write(db.to_csv().encode(), args.out)
    return 0


def cmd_classify(args) -> int:
    db = FeatureDatabase.from_csv(Path(args.db).read_text())
    args.scheme = db.scheme
    vec = _extractor(args)(read_pgm(args.image))
    threshold = args.threshold if args.threshold == "auto" else float(args.threshold)
    m = classify(vec, db, threshold)
    label = m.label if m.known else "UNKNOWN"
    _write(f"{label},{m.distance:.10g}\n".encode(), args.out)
    return 0


def cmd_bench(args) -> int:
    config = BenchConfig(
        corpus=CorpusSpec.parse(args.corpus, args.size, args.corpus_seed),
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        noise_densities=args.noise,
        rotations=args.rotations,
        equalize=not args.no_equalize,
        repeats=args.repeats,
        seed=args.seed,
    )
    report = accuracy_experiment(config)
    if args.save_db:
        out_dir = Path(args.save_db)
        out_dir.mkdir(parents=True, exist_ok=True)
        for method, db in report.databases.items():
            (out_dir / f"{method}.csv").write_text(db.to_csv())
    _write(emit_report(report, args.format), args.out)
    return 0


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="texbench", description="Wavelet and GLCM texture classification benchmark.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=func, parser=sp)
        return sp

    def out_flag(sp):
        sp.add_argument("--out", default="-", help="output file (default: stdout)")

    def wavelet_flags(sp):
        sp.add_argument("--wavelet", choices=WAVELETS, default="haar", help="wavelet filter (default: haar)")
        sp.add_argument("--mode", choices=ENERGY_MODES, default="mean_abs",
                        help="subband energy (default: mean_abs)")

    def glcm_flags(sp):
        sp.add_argument("--levels", type=int, default=8, help="GLCM gray levels (default: 8)")
        sp.add_argument("--raw", action="store_true", help="energy from raw counts instead of probabilities")

    sp = add("synth", cmd_synth, "Write a synthetic texture as PGM.")
    sp.add_argument("--kind", required=True, help="texture descriptor, e.g. checkerboard:8, grating:4:30, noise:1")
    sp.add_argument("--size", type=int, default=256, help="side length, power of two >= 8 (default: 256)")
    sp.add_argument("--seed", type=_u64, default=0, help="corpus seed (default: 0)")
    out_flag(sp)

    sp = add("perturb", cmd_perturb, "Apply noise, then equalisation, then rotation to a PGM.")
    sp.add_argument("image", help="input PGM")
    sp.add_argument("--noise", type=float, help="salt-and-pepper density in [0, 1]")
    sp.add_argument("--seed", type=_u64, default=0, help="noise seed (default: 0)")
    sp.add_argument("--equalize", action="store_true", help="histogram equalisation")
    sp.add_argument("--rotate", type=float, help="counter-clockwise rotation in degrees")
    out_flag(sp)

    sp = add("decompose", cmd_decompose, "Per-subband energy summary of a wavelet decomposition, as CSV.")
    sp.add_argument("image", help="input PGM")
    sp.add_argument("--wavelet", choices=WAVELETS, default="haar", help="wavelet filter (default: haar)")
    sp.add_argument("--levels", type=int, default=3, help="decomposition levels (default: 3)")
    out_flag(sp)

    sp = add("glcm", cmd_glcm, "Print the four directional GLCM energies as CSV.")
    sp.add_argument("image", help="input PGM")
    glcm_flags(sp)
    out_flag(sp)

    sp = add("build-db", cmd_build_db, "Extract features from labelled PGMs into a feature-database CSV.")
    sp.add_argument("items", nargs="+", metavar="label=img.pgm", help="labelled input images")
    sp.add_argument("--scheme", choices=("wavelet-7", "glcm-4"), default="wavelet-7",
                    help="feature scheme (default: wavelet-7)")
    wavelet_flags(sp)
    glcm_flags(sp)
    out_flag(sp)

    sp = add("classify", cmd_classify, "Classify a PGM against a feature database; prints label,distance.")
    sp.add_argument("image", help="input PGM")
    sp.add_argument("--db", required=True, help="feature-database CSV from build-db")
    sp.add_argument("--threshold", default="auto", help="rejection distance or 'auto' (default: auto)")
    wavelet_flags(sp)
    glcm_flags(sp)
    out_flag(sp)

    sp = add("bench", cmd_bench, "Run the timing/accuracy experiment grid.")
    sp.add_argument("--corpus", default="default", help="'default' or comma-separated texture descriptors")
    sp.add_argument("--size", type=int, default=256, help="corpus image side (default: 256)")
    sp.add_argument("--corpus-seed", type=_u64, default=0, help="seed for noise textures (default: 0)")
    sp.add_argument("--methods", default=",".join(METHODS), help="subset of haar,db4,sym8,glcm")
    sp.add_argument("--noise", type=_float_list, default=(0.02, 0.05, 0.09), help="noise densities")
    sp.add_argument("--rotations", type=_float_list, default=(2.0, 4.0, 30.0), help="rotation angles (degrees)")
    sp.add_argument("--no-equalize", action="store_true", help="skip the equalisation cell")
    sp.add_argument("--repeats", type=int, default=5, help="timing repeats, odd >= 3 (default: 5)")
    sp.add_argument("--seed", type=_u64, default=7,
                    help="perturbation seed (default: 7; TEXBENCH_SEED overrides)")
    sp.add_argument("--format", choices=("csv", "markdown"), default="markdown", help="report format")
    sp.add_argument("--save-db", metavar="DIR", help="also write one feature-database CSV per method")
    out_flag(sp)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TexbenchError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
