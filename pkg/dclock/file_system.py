"""
Result file writers

Every writer produces byte-identical files for identical inputs: floats use the shortest round-trip representation,
no timestamps are written and SVG coordinates are rounded to a fixed number of decimals.
"""

import csv
import json
import math
import os

import dclock.events as events
import dclock.exceptions as exceptions


# Exceptions


class NotWritable(exceptions.CLIValidationException):
    """Exception class for output paths whose directory does not exist"""
    pass


# Module Variables


SVG_WIDTH = 640
SVG_HEIGHT = 400
SVG_MARGIN = 60
SVG_COLORS = ('#1f77b4', '#d62728', '#2ca02c', '#9467bd')


# Path Utils


def expand_path(path):
    """Computes absolute path and expands user to achieve an application wide standard path format"""
    return os.path.abspath(os.path.expanduser(path))


def require_writable(path):
    """Expand 'path' and check that its directory exists"""
    path = expand_path(path)
    directory = os.path.dirname(path)
    if not os.path.isdir(directory):
        raise NotWritable('Output directory does not exist: "{}"'.format(directory))
    return path


# Formatting


def format_number(value):
    """Shortest round-trip text of a number; None is written as an empty field"""
    if value is None:
        return ''
    if isinstance(value, bool) or isinstance(value, str):
        return str(value)
    if isinstance(value, int):
        return repr(value)
    return repr(float(value))


def _jsonable(value):
    """Serializer for numpy scalars and arrays"""
    if hasattr(value, 'tolist'):
        return value.tolist()
    raise TypeError('Object of type {} is not JSON serializable'.format(type(value).__name__))


# JSON Utils


def save_json(data, path, serializer=_jsonable):
    """Save an object to a JSON file, optionally with a custom serializer"""
    path = require_writable(path)
    with open(path, 'w') as jf:
        json.dump(data, jf, default=serializer, indent=4, sort_keys=True)
        jf.write('\n')
    events.announce_output(path, 'json')


# CSV Utils


def save_csv(path, header, rows):
    """Save rows (sequences matching 'header') to a CSV file"""
    path = require_writable(path)
    with open(path, 'w', newline='') as cf:
        writer = csv.writer(cf, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(value) for value in row])
    events.announce_output(path, 'csv')


# SVG Utils


def _bounds(values):
    finite = [v for v in values if math.isfinite(v)]
    low, high = min(finite), max(finite)
    if low == high:
        low, high = low - 0.5, high + 0.5
    return low, high


def _svg_text(x, y, text, anchor='middle', rotate=False):
    transform = ' transform="rotate(-90 {:.2f} {:.2f})"'.format(x, y) if rotate else ''
    return '<text x="{:.2f}" y="{:.2f}" text-anchor="{}" font-size="12"{}>{}</text>'.format(
        x, y, anchor, transform, text)


def render_svg_plot(series, x_label, y_label, title=''):
    """
    Static line plot as SVG text
    :param series: List of (label, xs, ys); non-finite points are skipped
    :return: SVG document
    """
    xs = [x for _, sx, _ in series for x in sx]
    ys = [y for _, _, sy in series for y in sy]
    x_low, x_high = _bounds(xs)
    y_low, y_high = _bounds(ys)
    plot_w = SVG_WIDTH - 2 * SVG_MARGIN
    plot_h = SVG_HEIGHT - 2 * SVG_MARGIN

    def to_px(x, y):
        return (SVG_MARGIN + (x - x_low) / (x_high - x_low) * plot_w,
                SVG_HEIGHT - SVG_MARGIN - (y - y_low) / (y_high - y_low) * plot_h)

    left, bottom = SVG_MARGIN, SVG_HEIGHT - SVG_MARGIN
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">'.format(
            SVG_WIDTH, SVG_HEIGHT, SVG_WIDTH, SVG_HEIGHT),
        '<rect width="100%" height="100%" fill="white"/>',
        '<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>'.format(
            left, SVG_MARGIN, plot_w, plot_h),
        _svg_text(SVG_WIDTH / 2, SVG_MARGIN / 2, title),
        _svg_text(SVG_WIDTH / 2, SVG_HEIGHT - 15, x_label),
        _svg_text(20, SVG_HEIGHT / 2, y_label, rotate=True),
        _svg_text(left, bottom + 18, '{:.6g}'.format(x_low)),
        _svg_text(SVG_WIDTH - SVG_MARGIN, bottom + 18, '{:.6g}'.format(x_high)),
        _svg_text(left - 6, bottom, '{:.6g}'.format(y_low), anchor='end'),
        _svg_text(left - 6, SVG_MARGIN + 4, '{:.6g}'.format(y_high), anchor='end'),
    ]
    for index, (label, sx, sy) in enumerate(series):
        color = SVG_COLORS[index % len(SVG_COLORS)]
        points = ' '.join('{:.2f},{:.2f}'.format(*to_px(x, y))
                          for x, y in zip(sx, sy) if math.isfinite(x) and math.isfinite(y))
        lines.append('<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>'.format(color, points))
        lines.append('<text x="{:.2f}" y="{:.2f}" font-size="12" fill="{}">{}</text>'.format(
            SVG_WIDTH - SVG_MARGIN - 100, SVG_MARGIN + 16 * (index + 1), color, label))
    lines.append('</svg>')
    return '\n'.join(lines) + '\n'


def save_svg_plot(path, series, x_label, y_label, title=''):
    """Render a static line plot (see 'render_svg_plot') to 'path'"""
    path = require_writable(path)
    with open(path, 'w') as sf:
        sf.write(render_svg_plot(series, x_label, y_label, title))
    events.announce_output(path, 'svg')
