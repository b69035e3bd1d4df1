"""Artifact writers: metadata headers, CSV and PGM formats, atomic output.

Formats:
  field CSV   header `x,y,re_h,im_residual,denom_abs,blowup`, row-major
              (y fastest), 17-significant-digit floats
  errmap CSV  header `s,t,indicator`, sentinels spelled `-inf` / `+inf`
  sign PGM    P2 maxval 255, negative=0 blowup=128 positive=255, one
              raster row per y value (y increases downward)

Every file opens with `#`-prefixed metadata lines (after the magic in the
PGM case, which must start with `P2` to stay a valid PGM).  Writes go to
a temp file in the target directory then rename, so readers never see a
partial file.
"""

from __future__ import annotations

import math
import os
import tempfile

import numpy as np

from .fields import BLOWUP, NEGATIVE, POSITIVE

PGM_LEVELS = np.array([0, 128, 255], dtype=int)
CLASS_NAMES = {NEGATIVE: "negative", BLOWUP: "blowup", POSITIVE: "positive"}

_META_ORDER = (
    "version", "hamiltonian", "order", "grid", "t", "mode",
    "eps_blowup", "threads",
)


def fmt(value):
    """17-significant-digit decimal text for a float."""
    if isinstance(value, float):
        if math.isinf(value):
            return "+inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def _meta_value(value):
    # shortest round-trip form reads better in headers than fixed 17g
    if isinstance(value, float):
        if math.isinf(value):
            return "+inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def metadata_lines(meta):
    lines = []
    for key in _META_ORDER:
        if key in meta:
            lines.append(f"# {key}: {_meta_value(meta[key])}")
    for key in sorted(meta):
        if key not in _META_ORDER:
            lines.append(f"# {key}: {_meta_value(meta[key])}")
    return lines


def atomic_write_text(path, text):
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".kgflow-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def field_csv_text(fg):
    lines = metadata_lines(fg.meta)
    lines.append("x,y,re_h,im_residual,denom_abs,blowup")
    G = fg.G
    for i in range(G):
        x = i / G
        for j in range(G):
            y = j / G
            lines.append(
                f"{fmt(x)},{fmt(y)},{fmt(float(fg.h[i, j]))},"
                f"{fmt(float(fg.im_residual[i, j]))},"
                f"{fmt(float(fg.denom_abs[i, j]))},{int(fg.blowup[i, j])}"
            )
    return "\n".join(lines) + "\n"


def write_field_csv(path, fg):
    atomic_write_text(path, field_csv_text(fg))


def errmap_csv_text(rows, meta):
    lines = metadata_lines(meta)
    lines.append("s,t,indicator")
    for s, t, indicator in rows:
        lines.append(f"{fmt(float(s))},{fmt(float(t))},{fmt(float(indicator))}")
    return "\n".join(lines) + "\n"


def write_errmap_csv(path, rows, meta):
    atomic_write_text(path, errmap_csv_text(rows, meta))


def signmap_pgm_text(sm):
    lines = ["P2"]
    lines.extend(metadata_lines(sm.meta))
    G = sm.G
    lines.append(f"{G} {G}")
    lines.append("255")
    levels = PGM_LEVELS[sm.classes]
    for j in range(G):  # raster row per y value, y downward
        lines.append(" ".join(str(v) for v in levels[:, j]))
    return "\n".join(lines) + "\n"


def write_signmap_pgm(path, sm):
    atomic_write_text(path, signmap_pgm_text(sm))


def signmap_csv_text(sm):
    lines = metadata_lines(sm.meta)
    lines.append("x,y,class")
    G = sm.G
    for i in range(G):
        for j in range(G):
            lines.append(
                f"{fmt(i / G)},{fmt(j / G)},{CLASS_NAMES[int(sm.classes[i, j])]}"
            )
    return "\n".join(lines) + "\n"


def write_signmap_csv(path, sm):
    atomic_write_text(path, signmap_csv_text(sm))


def series_dump_text(series, meta):
    """Debug dump of w_1..w_N, one block per order."""
    lines = metadata_lines(meta)
    for k in range(1, series.order + 1):
        lines.append(f"# w_{k}")
        block = series.w[k - 1].debug_text()
        if block:
            lines.append(block)
    return "\n".join(lines) + "\n"
