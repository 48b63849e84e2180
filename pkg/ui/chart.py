"""PNG charts of flux, lifetime and scaling curves drawn on pygame surfaces."""

from __future__ import annotations

import math
import os
from pathlib import Path
from typing import List, NamedTuple, Sequence, Tuple

os.environ.setdefault("SDL_VIDEODRIVER", "dummy")

import pygame  # noqa: E402

from config import settings  # noqa: E402


class Series(NamedTuple):
    label: str
    xs: Sequence[float]
    ys: Sequence[float]


def _finite_points(series: Series, log_y: bool) -> List[Tuple[float, float]]:
    points = []
    for x, y in zip(series.xs, series.ys):
        if not (math.isfinite(x) and math.isfinite(y)):
            continue
        if log_y:
            if y <= 0:
                continue
            y = math.log10(y)
        points.append((x, y))
    return points


def _plot_rect() -> pygame.Rect:
    return pygame.Rect(
        settings.CHART_MARGIN_LEFT,
        settings.CHART_MARGIN_TOP,
        settings.CHART_WIDTH - settings.CHART_MARGIN_LEFT - settings.CHART_MARGIN_RIGHT,
        settings.CHART_HEIGHT - settings.CHART_MARGIN_TOP - settings.CHART_MARGIN_BOTTOM,
    )


def _span(values: Sequence[float]) -> Tuple[float, float]:
    low, high = min(values), max(values)
    if high == low:
        pad = abs(low) * 0.05 or 1.0
        return low - pad, high + pad
    return low, high


def draw_axes(surface: pygame.Surface, rect: pygame.Rect, x_span, y_span, font, log_y: bool) -> None:
    for i in range(settings.CHART_TICKS + 1):
        fraction = i / settings.CHART_TICKS
        x = rect.x + int(fraction * rect.width)
        y = rect.bottom - int(fraction * rect.height)
        pygame.draw.line(surface, settings.GRID_COLOR, (x, rect.y), (x, rect.bottom), 1)
        pygame.draw.line(surface, settings.GRID_COLOR, (rect.x, y), (rect.right, y), 1)
        x_value = x_span[0] + fraction * (x_span[1] - x_span[0])
        y_value = y_span[0] + fraction * (y_span[1] - y_span[0])
        x_text = font.render(f"{x_value:.4g}", True, settings.TEXT_COLOR)
        y_text = font.render(f"1e{y_value:.1f}" if log_y else f"{y_value:.3g}", True, settings.TEXT_COLOR)
        surface.blit(x_text, (x - x_text.get_width() // 2, rect.bottom + 8))
        surface.blit(y_text, (rect.x - y_text.get_width() - 8, y - y_text.get_height() // 2))
    pygame.draw.rect(surface, settings.AXIS_COLOR, rect, 2)


def render_chart(
    path: str | Path,
    title: str,
    series: Sequence[Series],
    x_label: str,
    y_label: str,
    log_y: bool = False,
) -> Path:
    """Draw line series into a PNG file."""
    pygame.font.init()
    font = pygame.font.SysFont(None, settings.TEXT_FONT_SIZE)
    title_font = pygame.font.SysFont(None, settings.TITLE_FONT_SIZE)

    surface = pygame.Surface((settings.CHART_WIDTH, settings.CHART_HEIGHT))
    surface.fill(settings.BG_COLOR)
    rect = _plot_rect()

    prepared = [(s.label, _finite_points(s, log_y)) for s in series]
    all_points = [p for _, points in prepared for p in points]
    if all_points:
        x_span = _span([p[0] for p in all_points])
        y_span = _span([p[1] for p in all_points])
    else:
        x_span = y_span = (0.0, 1.0)
    draw_axes(surface, rect, x_span, y_span, font, log_y)

    def to_screen(point: Tuple[float, float]) -> Tuple[int, int]:
        fx = (point[0] - x_span[0]) / (x_span[1] - x_span[0])
        fy = (point[1] - y_span[0]) / (y_span[1] - y_span[0])
        return rect.x + int(fx * rect.width), rect.bottom - int(fy * rect.height)

    for i, (label, points) in enumerate(prepared):
        color = settings.SERIES_COLORS[i % len(settings.SERIES_COLORS)]
        if len(points) >= 2:
            pygame.draw.lines(surface, color, False, [to_screen(p) for p in points], 2)
        elif points:
            pygame.draw.circle(surface, color, to_screen(points[0]), 3)
        legend = font.render(label, True, color)
        surface.blit(legend, (rect.right - legend.get_width() - 10, rect.y + 10 + i * (legend.get_height() + 4)))

    heading = title_font.render(title, True, settings.TEXT_COLOR)
    surface.blit(heading, (rect.x, (settings.CHART_MARGIN_TOP - heading.get_height()) // 2))
    x_text = font.render(x_label, True, settings.TEXT_COLOR)
    surface.blit(x_text, (rect.centerx - x_text.get_width() // 2, settings.CHART_HEIGHT - x_text.get_height() - 8))
    y_text = pygame.transform.rotate(font.render(y_label, True, settings.TEXT_COLOR), 90)
    surface.blit(y_text, (8, rect.centery - y_text.get_height() // 2))

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    pygame.image.save(surface, target.as_posix())
    return target
