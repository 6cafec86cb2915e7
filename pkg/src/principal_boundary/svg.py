"""SVG rendering of half-plane complexes.

Each domain is drawn as a rectangle: upper planes on the top row, lower
planes and cylinders on the bottom row.  Every boundary edge is a segment on
the rectangle's real side, coloured by the gluing it belongs to.
"""
from __future__ import annotations

import colorsys
import xml.etree.ElementTree as ET

from .errors import ConfigError
from .flatsurf import DomainComplex

SVG_NS = "http://www.w3.org/2000/svg"
BOX_W, BOX_H, GAP, MARGIN = 120, 60, 20, 20
ROW_LABEL = {"upper": "upper", "lower": "lower", "cylinder": "lower"}


def _palette(n):
    out = []
    for k in range(n):
        r, g, b = colorsys.hls_to_rgb(k / max(n, 1), 0.45, 0.75)
        out.append("#%02x%02x%02x" % (round(r * 255), round(g * 255), round(b * 255)))
    return out


def _fmt(x) -> str:
    return str(int(x)) if float(x).is_integer() else f"{x:.2f}"


def emit_svg(d: DomainComplex) -> str:
    if not d.domains:
        raise ConfigError("cannot draw an empty complex")
    colours = _palette(len(d.identifications))
    colour_of = {}
    for k, (a, b) in enumerate(d.identifications):
        colour_of[a] = colour_of[b] = colours[k]

    rows = {"upper": [], "lower": []}
    for dom in d.domains:
        rows[ROW_LABEL[dom.kind]].append(dom)
    cols = max(len(rows["upper"]), len(rows["lower"]))
    legend_h = 16 * (len(d.identifications) + 1)
    width = 2 * MARGIN + cols * BOX_W + (cols - 1) * GAP
    height = 2 * MARGIN + 2 * BOX_H + GAP + legend_h + 20

    ET.register_namespace("", SVG_NS)
    root = ET.Element(f"{{{SVG_NS}}}svg", {
        "version": "1.1", "width": _fmt(width), "height": _fmt(height),
        "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}"})
    ET.SubElement(root, f"{{{SVG_NS}}}title").text = "half-plane decomposition"

    for r, row in enumerate(("upper", "lower")):
        y = MARGIN + r * (BOX_H + GAP)
        for c, dom in enumerate(rows[row]):
            x = MARGIN + c * (BOX_W + GAP)
            g = ET.SubElement(root, f"{{{SVG_NS}}}g", {"id": dom.name})
            fill = "#f4f4f4" if dom.type != "cylinder" else "#e4ecf7"
            ET.SubElement(g, f"{{{SVG_NS}}}rect", {
                "x": _fmt(x), "y": _fmt(y), "width": _fmt(BOX_W), "height": _fmt(BOX_H),
                "fill": fill, "stroke": "#999999", "stroke-dasharray": "4 2"})
            # the real boundary sits at the bottom of an upper plane and the top of a lower one
            edge_y = y + BOX_H if row == "upper" else y
            seg = BOX_W / len(dom.edges)
            for e, (label, role) in enumerate(dom.edges):
                x0, x1 = x + e * seg, x + (e + 1) * seg
                ET.SubElement(g, f"{{{SVG_NS}}}line", {
                    "x1": _fmt(x0), "y1": _fmt(edge_y), "x2": _fmt(x1), "y2": _fmt(edge_y),
                    "stroke": colour_of.get(label, "#000000"),
                    "stroke-width": "4" if role in ("saddle", "circle") else "2",
                    "class": role})
            for k, point in enumerate(dom.corners):
                if dom.type == "cylinder":
                    break
                cx = x + (k + 1) * seg
                ET.SubElement(g, f"{{{SVG_NS}}}circle", {
                    "cx": _fmt(cx), "cy": _fmt(edge_y), "r": "3", "fill": "#000000"})
            ty = y + BOX_H / 2 + (-6 if row == "upper" else 10)
            text = ET.SubElement(g, f"{{{SVG_NS}}}text", {
                "x": _fmt(x + BOX_W / 2), "y": _fmt(ty), "text-anchor": "middle",
                "font-family": "monospace", "font-size": "11"})
            text.text = dom.name

    legend = ET.SubElement(root, f"{{{SVG_NS}}}g", {"id": "legend"})
    y0 = MARGIN + 2 * BOX_H + GAP + 24
    for k, (a, b) in enumerate(d.identifications):
        y = y0 + 16 * k
        ET.SubElement(legend, f"{{{SVG_NS}}}line", {
            "x1": _fmt(MARGIN), "y1": _fmt(y - 4), "x2": _fmt(MARGIN + 20), "y2": _fmt(y - 4),
            "stroke": colours[k], "stroke-width": "3"})
        item = ET.SubElement(legend, f"{{{SVG_NS}}}text", {
            "x": _fmt(MARGIN + 28), "y": _fmt(y), "font-family": "monospace", "font-size": "11"})
        item.text = f"{a} ~ {b}"
    return ET.tostring(root, encoding="unicode", xml_declaration=False) + "\n"
