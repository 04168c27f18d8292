/** Line/band rendering of series buckets.
 *
 * The chart plots exactly one vertex per bucket and stamps the original
 * numbers onto the nodes (data-mean / data-min / data-max and table cell
 * text), so what the API sent is what the DOM holds: no resampling, no
 * rounding of the underlying values.
 */

import { el, svgEl } from "./dom.js";
import { PARAMETER_UNITS } from "./validation.js";
import type { SeriesBucket, ViewModelSeries } from "./types.js";

export function toViewModelSeries(parameter: string, buckets: SeriesBucket[]): ViewModelSeries {
  const points = buckets.map((b) => ({
    t: b.bucket_start_t,
    mean: b.mean,
    min: b.min,
    max: b.max,
  }));
  for (let i = 1; i < points.length; i++) {
    if (points[i].t < points[i - 1].t) {
      throw new Error("series buckets must be sorted by time");
    }
  }
  return { parameter, unit: PARAMETER_UNITS[parameter] ?? "", points };
}

const WIDTH = 640;
const HEIGHT = 220;
const PAD = 30;

export function renderSeriesChart(series: ViewModelSeries): SVGElement {
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "series-chart",
    "data-parameter": series.parameter,
  });
  const points = series.points;
  if (points.length === 0) {
    const empty = svgEl("text", { x: String(WIDTH / 2), y: String(HEIGHT / 2) });
    empty.textContent = "no data in range";
    svg.append(empty);
    return svg;
  }
  const t0 = points[0].t;
  const t1 = points[points.length - 1].t;
  const lo = Math.min(...points.map((p) => p.min));
  const hi = Math.max(...points.map((p) => p.max));
  const xScale = (t: number) =>
    t1 === t0 ? WIDTH / 2 : PAD + ((t - t0) / (t1 - t0)) * (WIDTH - 2 * PAD);
  const yScale = (v: number) =>
    hi === lo ? HEIGHT / 2 : HEIGHT - PAD - ((v - lo) / (hi - lo)) * (HEIGHT - 2 * PAD);

  const bandPoints = points
    .map((p) => `${xScale(p.t)},${yScale(p.max)}`)
    .concat([...points].reverse().map((p) => `${xScale(p.t)},${yScale(p.min)}`))
    .join(" ");
  svg.append(svgEl("polygon", { points: bandPoints, class: "series-band" }));
  svg.append(
    svgEl("polyline", {
      points: points.map((p) => `${xScale(p.t)},${yScale(p.mean)}`).join(" "),
      class: "series-line",
      fill: "none",
    }),
  );
  for (const p of points) {
    svg.append(
      svgEl("circle", {
        cx: String(xScale(p.t)),
        cy: String(yScale(p.mean)),
        r: "3",
        class: "series-point",
        "data-t": String(p.t),
        "data-mean": String(p.mean),
        "data-min": String(p.min),
        "data-max": String(p.max),
      }),
    );
  }
  const label = svgEl("text", { x: String(PAD), y: "16", class: "series-label" });
  label.textContent = `${series.parameter} ${series.unit ? `(${series.unit})` : ""}`;
  svg.append(label);
  return svg;
}

export function renderSeriesTable(series: ViewModelSeries, buckets: SeriesBucket[]): HTMLElement {
  const header = el("tr", {}, [
    el("th", {}, ["bucket start"]),
    el("th", {}, ["count"]),
    el("th", {}, ["mean"]),
    el("th", {}, ["min"]),
    el("th", {}, ["max"]),
  ]);
  const body = buckets.map((b) =>
    el("tr", { class: "series-row" }, [
      el("td", {}, [String(b.bucket_start_t)]),
      el("td", {}, [String(b.count)]),
      el("td", { class: "cell-mean" }, [String(b.mean)]),
      el("td", {}, [String(b.min)]),
      el("td", {}, [String(b.max)]),
    ]),
  );
  return el("table", { class: "series-table", "data-parameter": series.parameter }, [
    el("thead", {}, [header]),
    el("tbody", {}, body),
  ]);
}
