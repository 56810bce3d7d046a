"""Distribution files, sweep CSVs, and the sweep chart.

Distribution files are JSON with an explicit axis-order stamp:

    {
      "shape": {"bob": 2, "alice": 2, "eve": 4},
      "order": "bob,alice,eve",
      "probs": [0.24, 0.0, ...]
    }

The order field is a guard, not a knob: files claiming any other axis
order are rejected so a reordered tensor can never be loaded silently.
Probabilities are written with 17 significant digits, which round-trips
IEEE doubles bit-exactly.
"""

import json
from xml.sax.saxutils import escape

from .dist import Shape, TripartiteDistribution, validate_tripartite
from .errors import (
    DistributionError,
    EmptyInput,
    IoError,
    ParseError,
    TooFewRows,
    ValidationError,
    WrongOrder,
)

ORDER_LITERAL = "bob,alice,eve"
CSV_HEADER = "epsilon,p_b,p_e,i_ab,i_ae,gap"

SVG_WIDTH = 800
SVG_HEIGHT = 500
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 30, 40, 60


def _write_text(path, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e


def save_distribution(dist: TripartiteDistribution, path):
    s = dist.shape
    probs = ", ".join(format(v, ".17g") for v in dist.flat)
    text = (
        "{\n"
        f'  "shape": {{"bob": {s.bob}, "alice": {s.alice}, "eve": {s.eve}}},\n'
        f'  "order": "{ORDER_LITERAL}",\n'
        f'  "probs": [{probs}]\n'
        "}\n"
    )
    _write_text(path, text)


def load_distribution(path) -> TripartiteDistribution:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in ("shape", "order", "probs"):
        if key not in doc:
            raise ParseError(f"{path}: missing field {key!r}")
    if doc["order"] != ORDER_LITERAL:
        raise WrongOrder(
            f"{path}: order must be {ORDER_LITERAL!r}, got {doc['order']!r}"
        )
    sh = doc["shape"]
    if not isinstance(sh, dict) or set(sh) != {"bob", "alice", "eve"}:
        raise ParseError(f"{path}: shape must name exactly bob, alice, eve")
    try:
        shape = Shape(int(sh["bob"]), int(sh["alice"]), int(sh["eve"]))
    except (TypeError, ValueError) as e:
        raise ParseError(f"{path}: bad shape: {e}") from e
    probs = doc["probs"]
    if not isinstance(probs, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in probs
    ):
        raise ParseError(f"{path}: probs must be a flat numeric array")
    try:
        return validate_tripartite(probs, shape)
    except DistributionError as e:
        raise ValidationError(f"{path}: {e}") from e


def emit_sweep_csv(rows, path):
    if not rows:
        raise EmptyInput("sweep CSV needs at least one row")
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                format(v, ".12g")
                for v in (r.epsilon, r.p_b, r.p_e, r.i_ab, r.i_ae, r.gap)
            )
        )
    _write_text(path, "\n".join(lines) + "\n")


def _sign_change_epsilon(rows):
    """Epsilon of the first sign change of the gap, or None."""
    for prev, cur in zip(rows, rows[1:]):
        if prev.gap == 0.0:
            return prev.epsilon
        if prev.gap * cur.gap < 0.0:
            # linear interpolation between the bracketing rows
            t = prev.gap / (prev.gap - cur.gap)
            return prev.epsilon + t * (cur.epsilon - prev.epsilon)
    if rows[-1].gap == 0.0:
        return rows[-1].epsilon
    return None


def render_sweep_svg(rows, path):
    """Chart i_ab and i_ae against epsilon as two labeled polylines.

    A dashed vertical marker is drawn at the first epsilon where the gap
    i_ae - i_ab changes sign, when the sweep brackets one.  Output is a
    standalone 800x500 SVG document with no external references.
    """
    if len(rows) < 2:
        raise TooFewRows(f"chart needs at least 2 rows, got {len(rows)}")
    xs = [r.epsilon for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_hi = x_lo + 1e-12
    ys = [v for r in rows for v in (r.i_ab, r.i_ae)]
    y_lo = 0.0
    y_hi = max(max(ys), 1e-12) * 1.08
    plot_w = SVG_WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = SVG_HEIGHT - _MARGIN_T - _MARGIN_B

    def px(eps):
        return _MARGIN_L + (eps - x_lo) / (x_hi - x_lo) * plot_w

    def py(val):
        return SVG_HEIGHT - _MARGIN_B - (val - y_lo) / (y_hi - y_lo) * plot_h

    def polyline(vals, color):
        pts = " ".join(f"{px(r.epsilon):.2f},{py(v):.2f}" for r, v in zip(rows, vals))
        return (
            f'<polyline fill="none" stroke="{color}" stroke-width="2" '
            f'points="{pts}"/>'
        )

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        # axes
        f'<line x1="{_MARGIN_L}" y1="{py(y_lo):.2f}" x2="{SVG_WIDTH - _MARGIN_R}" '
        f'y2="{py(y_lo):.2f}" stroke="black"/>',
        f'<line x1="{_MARGIN_L}" y1="{py(y_lo):.2f}" x2="{_MARGIN_L}" '
        f'y2="{_MARGIN_T}" stroke="black"/>',
        f'<text x="{_MARGIN_L}" y="{SVG_HEIGHT - _MARGIN_B + 20}" '
        f'font-size="12" text-anchor="middle">{escape(format(x_lo, ".6g"))}</text>',
        f'<text x="{SVG_WIDTH - _MARGIN_R}" y="{SVG_HEIGHT - _MARGIN_B + 20}" '
        f'font-size="12" text-anchor="middle">{escape(format(x_hi, ".6g"))}</text>',
        f'<text x="{SVG_WIDTH // 2}" y="{SVG_HEIGHT - _MARGIN_B + 40}" '
        f'font-size="14" text-anchor="middle">epsilon</text>',
        f'<text x="{_MARGIN_L - 8}" y="{py(y_hi / 1.08) + 4:.2f}" font-size="12" '
        f'text-anchor="end">{escape(format(y_hi / 1.08, ".4g"))}</text>',
        f'<text x="{_MARGIN_L - 8}" y="{py(0.0) + 4:.2f}" font-size="12" '
        'text-anchor="end">0</text>',
        f'<text x="20" y="{_MARGIN_T - 12}" font-size="14">bits</text>',
        polyline([r.i_ab for r in rows], "#1f6fb2"),
        polyline([r.i_ae for r in rows], "#c03a2b"),
        f'<text x="{SVG_WIDTH - _MARGIN_R - 6}" y="{py(rows[-1].i_ab) - 6:.2f}" '
        f'font-size="13" fill="#1f6fb2" text-anchor="end">i_ab</text>',
        f'<text x="{SVG_WIDTH - _MARGIN_R - 6}" y="{py(rows[-1].i_ae) - 6:.2f}" '
        f'font-size="13" fill="#c03a2b" text-anchor="end">i_ae</text>',
    ]
    cross = _sign_change_epsilon(rows)
    if cross is not None:
        x = px(cross)
        parts.append(
            f'<line x1="{x:.2f}" y1="{py(y_lo):.2f}" x2="{x:.2f}" '
            f'y2="{_MARGIN_T}" stroke="#444444" stroke-dasharray="5,4"/>'
        )
        parts.append(
            f'<text x="{x + 5:.2f}" y="{_MARGIN_T + 14}" font-size="12" '
            f'fill="#444444">gap = 0 at {escape(format(cross, ".4g"))}</text>'
        )
    parts.append("</svg>")
    _write_text(path, "\n".join(parts) + "\n")
