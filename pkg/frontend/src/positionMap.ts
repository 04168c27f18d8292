/** Indoor map: room outlines, anchors, and the latest position estimate. */

import { svgEl } from "./dom.js";
import type { LayoutWire, PositionWire } from "./types.js";

const SIZE = 480;
const PAD = 20;

export function renderPositionMap(
  layout: LayoutWire,
  estimate: PositionWire | null,
  onClick?: (x: number, y: number) => void,
  markers: { x: number; y: number; label: string }[] = [],
): SVGElement {
  const xs = layout.rooms.flatMap((r) => r.polygon.map((p) => p[0]));
  const ys = layout.rooms.flatMap((r) => r.polygon.map((p) => p[1]));
  const lo = [Math.min(...xs, 0), Math.min(...ys, 0)];
  const hi = [Math.max(...xs, 1), Math.max(...ys, 1)];
  const span = Math.max(hi[0] - lo[0], hi[1] - lo[1]);
  const scale = (SIZE - 2 * PAD) / span;
  const sx = (x: number) => PAD + (x - lo[0]) * scale;
  const sy = (y: number) => SIZE - PAD - (y - lo[1]) * scale; // y up

  const svg = svgEl("svg", { viewBox: `0 0 ${SIZE} ${SIZE}`, class: "position-map" });
  for (const room of layout.rooms) {
    svg.append(
      svgEl("polygon", {
        points: room.polygon.map((p) => `${sx(p[0])},${sy(p[1])}`).join(" "),
        class: "room-outline",
        "data-room-id": room.room_id,
      }),
    );
    const cx = room.polygon.reduce((acc, p) => acc + p[0], 0) / room.polygon.length;
    const cy = room.polygon.reduce((acc, p) => acc + p[1], 0) / room.polygon.length;
    const label = svgEl("text", { x: String(sx(cx)), y: String(sy(cy)), class: "room-label" });
    label.textContent = room.room_id;
    svg.append(label);
  }
  for (const anchor of layout.anchors) {
    svg.append(
      svgEl("circle", {
        cx: String(sx(anchor.position[0])),
        cy: String(sy(anchor.position[1])),
        r: "5",
        class: "anchor-dot",
        "data-anchor-id": anchor.anchor_id,
      }),
    );
  }
  for (const marker of markers) {
    svg.append(
      svgEl("rect", {
        x: String(sx(marker.x) - 4),
        y: String(sy(marker.y) - 4),
        width: "8",
        height: "8",
        class: "sensor-marker",
        "data-label": marker.label,
      }),
    );
  }
  if (estimate && estimate.xy) {
    svg.append(
      svgEl("circle", {
        cx: String(sx(estimate.xy[0])),
        cy: String(sy(estimate.xy[1])),
        r: "7",
        class: "estimate-dot",
        "data-room-id": estimate.room_id ?? "none",
      }),
    );
  }
  if (onClick) {
    svg.addEventListener("click", (event) => {
      const rect = (svg as unknown as HTMLElement).getBoundingClientRect();
      const viewX = ((event.clientX - rect.left) / rect.width) * SIZE;
      const viewY = ((event.clientY - rect.top) / rect.height) * SIZE;
      onClick((viewX - PAD) / scale + lo[0], (SIZE - PAD - viewY) / scale + lo[1]);
    });
  }
  return svg;
}

/** Snap a map coordinate to the placement grid (half-meter cells). */
export function snapToGrid(value: number, cell = 0.5): number {
  return Math.round(value / cell) * cell;
}
