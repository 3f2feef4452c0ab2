"""Excursion masks, the hole-count spectrum {m_j}, and 2D topological statistics.

A thresholded field decomposes into connected components, each carrying some
number j of holes; m_j counts the components with exactly j holes.  All four
statistics follow by weighted sums over the spectrum:

    b0 = sum_j m_j           (components)
    b1 = sum_j j m_j         (holes)
    chi = b0 - b1            (Euler characteristic)
    b_sum = b0 + b1

Conventions, fixed once for the whole package: foreground is 8-connected and
background 4-connected (26/6 in 3D), which is exactly the connectivity of the
union of closed unit pixels.  Analysis is planar: the grid is treated as a
clipped field of view, not a torus, so components touching the border count
as components and background touching the border is exterior, not a hole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from scipy import ndimage

from .errors import DegenerateFieldError, DomainError
from .grf import FieldGrid

_STRUCT_8 = np.ones((3, 3), dtype=int)


@dataclass
class ExcursionMask:
    """Boolean excursion set of a field at threshold nu (in units of sigma0)."""

    bits: np.ndarray
    nu: float
    sigma_used: float

    def __post_init__(self) -> None:
        if self.bits.dtype != bool:
            self.bits = self.bits.astype(bool)
        if self.bits.ndim not in (2, 3):
            raise DomainError(f"mask must be 2D or 3D, got {self.bits.ndim}D")

    @property
    def dim(self) -> int:
        return self.bits.ndim

    @property
    def side(self) -> int:
        return self.bits.shape[0]


@dataclass
class HoleSpectrum:
    """Counts m_j of connected components having exactly j holes."""

    nu: float
    counts: dict[int, int] = dataclass_field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[int, int] = {}
        for j, m in self.counts.items():
            if j < 0 or m < 0:
                raise DomainError(f"invalid spectrum entry m_{j} = {m}")
            if m > 0:
                cleaned[int(j)] = int(m)
        self.counts = cleaned

    @property
    def jmax(self) -> int:
        return max(self.counts) if self.counts else 0

    @property
    def n_components(self) -> int:
        return sum(self.counts.values())


@dataclass
class TopoStats:
    """Betti numbers, Euler characteristic and their sum at one threshold."""

    b0: int
    b1: int
    b2: int
    chi: int
    bsum: int
    nu: float

    def __post_init__(self) -> None:
        if self.chi != self.b0 - self.b1 + self.b2:
            raise DomainError("chi must equal b0 - b1 + b2")
        if self.bsum != self.b0 + self.b1 + self.b2:
            raise DomainError("bsum must equal b0 + b1 + b2")


def excursion_mask(field: FieldGrid, nu: float, sigma_mode="sample") -> ExcursionMask:
    """Threshold a field at nu * sigma0.

    ``sigma_mode`` is either the string ``"sample"`` (use the realization's
    own standard deviation) or a positive float (a fixed ensemble sigma0).
    """
    if sigma_mode == "sample":
        sigma = float(field.values.std())
    else:
        sigma = float(sigma_mode)
    if sigma <= 0.0:
        raise DegenerateFieldError(f"sigma0 = {sigma}: cannot threshold a flat field")
    bits = field.values >= nu * sigma
    return ExcursionMask(bits=bits, nu=float(nu), sigma_used=sigma)


def hole_spectrum(mask: ExcursionMask) -> HoleSpectrum:
    """Count components by their number of holes (2D, planar).

    Foreground components are labeled with 8-connectivity, background with
    4-connectivity.  Background components touching the grid border are
    exterior; every other one is a hole.  A hole is attributed to the
    component owning the pixel directly above the hole's topmost-leftmost
    pixel; under the 8/4 convention that pixel is always foreground and
    always belongs to the enclosing component (islands nested inside a hole
    lie strictly below its topmost row).
    """
    if mask.dim != 2:
        raise DomainError("hole_spectrum is defined for 2D masks")
    bits = mask.bits
    fg_labels, n_fg = ndimage.label(bits, structure=_STRUCT_8)
    if n_fg == 0:
        return HoleSpectrum(nu=mask.nu, counts={})

    bg_labels, n_bg = ndimage.label(~bits)  # default structure = 4-connectivity
    exterior = np.unique(
        np.concatenate(
            [bg_labels[0, :], bg_labels[-1, :], bg_labels[:, 0], bg_labels[:, -1]]
        )
    )
    is_hole = np.ones(n_bg + 1, dtype=bool)
    is_hole[0] = False
    is_hole[exterior] = False

    holes_per_component = np.zeros(n_fg + 1, dtype=np.int64)
    if is_hole.any():
        ncols = bits.shape[1]
        flat_bg = bg_labels.ravel()
        labels_seen, first_idx = np.unique(flat_bg, return_index=True)
        hole_first = first_idx[is_hole[labels_seen]]
        owner_idx = hole_first - ncols  # pixel directly above, row-major
        owners = fg_labels.ravel()[owner_idx]
        assert owners.all(), "pixel above a hole's topmost pixel must be foreground"
        holes_per_component += np.bincount(owners, minlength=n_fg + 1)

    per_component = holes_per_component[1:]
    js, ms = np.unique(per_component, return_counts=True)
    return HoleSpectrum(nu=mask.nu, counts={int(j): int(m) for j, m in zip(js, ms)})


def topo_stats_from_spectrum(hs: HoleSpectrum) -> TopoStats:
    """Betti numbers and friends as weighted sums over the spectrum."""
    b0 = sum(hs.counts.values())
    b1 = sum(j * m for j, m in hs.counts.items())
    return TopoStats(b0=b0, b1=b1, b2=0, chi=b0 - b1, bsum=b0 + b1, nu=hs.nu)


def euler_closed_cell(mask: ExcursionMask) -> int:
    """Euler characteristic of the union of closed unit pixels/voxels.

    Counts distinct vertices, edges and faces (and cubes in 3D) of the cell
    complex: chi = V - E + F (- C).  This is an independent cross-check of
    the labeling route; under the closed-cell convention it equals b0 - b1
    (+ b2) exactly.
    """
    bits = mask.bits
    if mask.dim == 2:
        n0, n1 = bits.shape
        padded = np.zeros((n0 + 2, n1 + 2), dtype=bool)
        padded[1:-1, 1:-1] = bits
        faces = int(bits.sum())
        vertices = int(
            (
                padded[:-1, :-1] | padded[:-1, 1:] | padded[1:, :-1] | padded[1:, 1:]
            ).sum()
        )
        edges_h = int((padded[:-1, 1:-1] | padded[1:, 1:-1]).sum())
        edges_v = int((padded[1:-1, :-1] | padded[1:-1, 1:]).sum())
        return vertices - (edges_h + edges_v) + faces

    p = np.zeros(tuple(s + 2 for s in bits.shape), dtype=bool)
    p[1:-1, 1:-1, 1:-1] = bits
    cubes = int(bits.sum())
    vertices = int(
        (
            p[:-1, :-1, :-1] | p[:-1, :-1, 1:] | p[:-1, 1:, :-1] | p[:-1, 1:, 1:]
            | p[1:, :-1, :-1] | p[1:, :-1, 1:] | p[1:, 1:, :-1] | p[1:, 1:, 1:]
        ).sum()
    )
    # edges along axis a: OR over the 4 voxels sharing the edge
    edges = 0
    edges += int(
        (
            p[1:-1, :-1, :-1] | p[1:-1, :-1, 1:] | p[1:-1, 1:, :-1] | p[1:-1, 1:, 1:]
        ).sum()
    )
    edges += int(
        (
            p[:-1, 1:-1, :-1] | p[:-1, 1:-1, 1:] | p[1:, 1:-1, :-1] | p[1:, 1:-1, 1:]
        ).sum()
    )
    edges += int(
        (
            p[:-1, :-1, 1:-1] | p[:-1, 1:, 1:-1] | p[1:, :-1, 1:-1] | p[1:, 1:, 1:-1]
        ).sum()
    )
    # faces normal to axis a: OR over the 2 voxels sharing the face
    faces = 0
    faces += int((p[:-1, 1:-1, 1:-1] | p[1:, 1:-1, 1:-1]).sum())
    faces += int((p[1:-1, :-1, 1:-1] | p[1:-1, 1:, 1:-1]).sum())
    faces += int((p[1:-1, 1:-1, :-1] | p[1:-1, 1:-1, 1:]).sum())
    return vertices - edges + faces - cubes


def generating_function(hs: HoleSpectrum, alpha: float) -> tuple[float, float]:
    """Evaluate h(alpha) = sum_j m_j exp(-j alpha) and its derivative."""
    if not math.isfinite(alpha):
        raise DomainError("alpha must be finite")
    h = 0.0
    dh = 0.0
    for j, m in hs.counts.items():
        w = m * math.exp(-j * alpha)
        h += w
        dh -= j * w
    return h, dh


def betti_from_h(hs: HoleSpectrum) -> TopoStats:
    """Recover the topological statistics from the generating function at 0.

    b0 = h(0), b1 = -h'(0), chi = h(0) + h'(0), bsum = h(0) - h'(0).
    """
    h, dh = generating_function(hs, 0.0)
    b0 = int(round(h))
    b1 = int(round(-dh))
    return TopoStats(b0=b0, b1=b1, b2=0, chi=b0 - b1, bsum=b0 + b1, nu=hs.nu)
