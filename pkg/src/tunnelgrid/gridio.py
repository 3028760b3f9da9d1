"""On-disk formats: atom lists and sampled-potential files.

Atom list: plain text, one row per atom -- element symbol, mass (amu),
x y z (A); '#' starts a comment.  Two such files define a site pair.

Potential samples: a TOML sidecar with per-axis label/min/max/count/units
plus defect metadata, and a CSV data file with one row per grid point --
integer indices (ascending row-major), then the energy in meV.  Comma
delimited, '#' comments, UTF-8, LF line endings.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from .errors import MalformedRow, MissingSample, NonMonotoneAxis
from .grids import Axis, GridSpec
from .potential import SampledPotential


@dataclass(frozen=True)
class AtomRow:
    element: str
    mass: float
    xyz: np.ndarray


def read_atoms(path):
    """Parse an atom list file into AtomRow entries."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 5:
                raise MalformedRow(
                    f"{path}:{lineno}: expected 'element mass x y z', got {raw!r}"
                )
            try:
                mass = float(parts[1])
                xyz = np.array([float(p) for p in parts[2:5]])
            except ValueError as exc:
                raise MalformedRow(f"{path}:{lineno}: {exc}") from exc
            rows.append(AtomRow(parts[0], mass, xyz))
    return rows


def write_atoms(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# element mass_amu x_A y_A z_A\n")
        for r in rows:
            fh.write(f"{r.element} {r.mass!r} {r.xyz[0]!r} {r.xyz[1]!r} {r.xyz[2]!r}\n")


def site_pair(path_1, path_2, exclude_elements=("H", "D")):
    """Load two relaxed configurations; returns (lattice_1, lattice_2,
    masses, excluded_rows) with the tunneling species separated out."""
    a = read_atoms(path_1)
    b = read_atoms(path_2)
    if len(a) != len(b):
        raise MalformedRow(f"{path_1} and {path_2} have different atom counts")
    lat1, lat2, masses, excluded = [], [], [], []
    for r1, r2 in zip(a, b):
        if r1.element != r2.element:
            raise MalformedRow(
                f"atom ordering differs: {r1.element} vs {r2.element}"
            )
        if r1.element in exclude_elements:
            excluded.append((r1, r2))
            continue
        lat1.append(r1.xyz)
        lat2.append(r2.xyz)
        masses.append(r1.mass)
    return np.array(lat1), np.array(lat2), np.array(masses), excluded


# ----------------------------------------------------------------------
# sampled potential format
# ----------------------------------------------------------------------

def default_meta_path(data_path) -> str:
    base, _ext = os.path.splitext(str(data_path))
    return base + ".meta.toml"


def read_sample_meta(meta_path):
    with open(meta_path, "rb") as fh:
        doc = tomllib.load(fh)
    if "axes" not in doc or not doc["axes"]:
        raise MalformedRow(f"{meta_path}: missing [[axes]] entries")
    axes = []
    for i, ax in enumerate(doc["axes"]):
        for key in ("label", "min", "max", "count"):
            if key not in ax:
                raise MalformedRow(f"{meta_path}: axes[{i}] missing {key!r}")
        units = ax.get("units", "amu^1/2*A")
        if units not in ("amu^1/2*A",):
            raise MalformedRow(f"{meta_path}: unsupported units {units!r}")
        lo, hi, count = float(ax["min"]), float(ax["max"]), int(ax["count"])
        if count >= 2 and not lo < hi:
            raise NonMonotoneAxis(
                f"{meta_path}: axis {ax['label']!r} needs min < max"
            )
        axes.append(Axis(ax["label"], lo, hi, count))
    meta = dict(doc.get("defect", {}))
    return GridSpec(axes), meta


def ingest(data_path, meta_path=None) -> SampledPotential:
    """Read a sampled potential (data + sidecar) into a SampledPotential.

    Requires a complete lattice of index tuples; duplicates and malformed
    rows are rejected, and the missing tuple is named when the lattice is
    incomplete.  Energies are re-referenced so the minimum is zero.
    """
    meta_path = meta_path or default_meta_path(data_path)
    spec, meta = read_sample_meta(meta_path)
    shape = spec.shape
    nd = len(shape)
    energies = np.full(shape, np.nan)
    seen = np.zeros(shape, dtype=bool)
    with open(data_path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != nd + 1:
                raise MalformedRow(
                    f"{data_path}:{lineno}: expected {nd} indices + energy, "
                    f"got {len(parts)} fields"
                )
            try:
                idx = tuple(int(p) for p in parts[:nd])
                energy = float(parts[nd])
            except ValueError as exc:
                raise MalformedRow(f"{data_path}:{lineno}: {exc}") from exc
            if any(i < 0 or i >= s for i, s in zip(idx, shape)):
                raise MalformedRow(
                    f"{data_path}:{lineno}: index {idx} outside grid {shape}"
                )
            if seen[idx]:
                raise MalformedRow(
                    f"{data_path}:{lineno}: duplicate index tuple {idx}"
                )
            if not np.isfinite(energy):
                raise MalformedRow(f"{data_path}:{lineno}: non-finite energy")
            seen[idx] = True
            energies[idx] = energy
    if not seen.all():
        first = tuple(int(v) for v in np.argwhere(~seen)[0])
        n_missing = int((~seen).sum())
        raise MissingSample(
            f"{data_path}: lattice incomplete, {n_missing} points missing, "
            f"first missing index tuple {first}"
        )
    return SampledPotential(spec, energies, metadata=meta)


def write_samples(data_path, sampled: SampledPotential, meta_path=None):
    """Write a SampledPotential in the canonical on-disk form."""
    meta_path = meta_path or default_meta_path(data_path)
    spec = sampled.spec
    with open(meta_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# sampled potential metadata\n")
        fh.write("[defect]\n")
        for key, val in sorted(sampled.metadata.items()):
            if isinstance(val, str):
                fh.write(f'{key} = "{val}"\n')
            elif isinstance(val, bool):
                fh.write(f"{key} = {'true' if val else 'false'}\n")
            elif isinstance(val, (int, float)):
                fh.write(f"{key} = {val!r}\n")
        fh.write("\n")
        for ax in spec.axes:
            fh.write("[[axes]]\n")
            fh.write(f'label = "{ax.label}"\n')
            fh.write(f"min = {ax.lo!r}\n")
            fh.write(f"max = {ax.hi!r}\n")
            fh.write(f"count = {ax.count}\n")
            fh.write('units = "amu^1/2*A"\n\n')
    flat = sampled.energies.ravel()
    with open(data_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# " + ",".join(f"i_{a.label}" for a in spec.axes)
                 + ",energy_mev\n")
        for flat_i, idx in enumerate(np.ndindex(spec.shape)):
            fh.write(",".join(str(i) for i in idx) + f",{flat[flat_i]!r}\n")
