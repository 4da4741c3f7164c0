/** Render model (pure) and the canvas painter that applies it 1:1.
 *
 * The canvas bitmap uses the server's grid coordinates directly: positions
 * are drawn exactly where the response puts them, with no client-side
 * re-layout. Visual sizing happens in CSS.
 */

import type { ProjectionResponse } from "./api.js";
import { frameIndexAt, positionAt, ViewState } from "./state.js";

/** Grid used by the server when the query names none. */
export const GRID_SIZE = 1000;

export const PALETTE = [
  "#4e79a7", "#e15759", "#59a14f", "#b07aa1", "#f28e2b",
  "#76b7b2", "#edc948", "#9c755f", "#bab0ac", "#d37295",
];

export interface MarkerModel {
  x: number;
  y: number;
  slice: number;
  hollow: boolean; // hollow marks a slice with no data, shown on the bridged path
}

export interface WordRenderModel {
  word: string;
  color: string;
  empty: boolean;
  position: [number, number] | null;
  trail: [number, number][];
  markers: MarkerModel[];
}

export function colorFor(wordIndex: number): string {
  return PALETTE[wordIndex % PALETTE.length];
}

/** Everything the painter needs for one animation frame. */
export function renderModel(state: ViewState): WordRenderModel[] {
  const response = state.loadedResponse;
  if (!response) return [];
  return state.trajectories.map((trajectory) => {
    const index = frameIndexAt(trajectory, state.sliceTime);
    const trail = index === null ? [] : trajectory.frames.slice(0, index + 1);
    const markers = markerModels(response, trajectory.word_index, state.sliceTime);
    return {
      word: trajectory.word,
      color: colorFor(trajectory.word_index),
      empty: trajectory.empty,
      position: index === null ? null : trajectory.frames[index],
      trail,
      markers,
    };
  });
}

function markerModels(
  response: ProjectionResponse,
  wordIndex: number,
  sliceTime: number,
): MarkerModel[] {
  const markers: MarkerModel[] = [];
  const row = response.points[wordIndex];
  const trajectory = response.trajectories?.[wordIndex];
  if (!row || !trajectory || trajectory.keyframes.length === 0) return markers;
  const firstSlice = trajectory.keyframes[0].slice;
  const lastSlice = trajectory.keyframes[trajectory.keyframes.length - 1].slice;
  for (let slice = 0; slice < row.length; slice++) {
    if (slice > Math.ceil(sliceTime)) break; // only show markers already reached
    const cell = row[slice];
    if (cell !== null) {
      markers.push({ x: cell[0], y: cell[1], slice, hollow: false });
    } else if (slice > firstSlice && slice < lastSlice) {
      const bridged = positionAt(trajectory, slice);
      if (bridged) markers.push({ x: bridged[0], y: bridged[1], slice, hollow: true });
    }
  }
  return markers;
}

export class CanvasPainter {
  private readonly ctx: CanvasRenderingContext2D;

  constructor(private readonly canvas: HTMLCanvasElement) {
    canvas.width = GRID_SIZE;
    canvas.height = GRID_SIZE;
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("2d canvas context unavailable");
    this.ctx = ctx;
  }

  paint(models: WordRenderModel[]): void {
    const ctx = this.ctx;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    for (const model of models) {
      if (model.trail.length > 1) {
        ctx.beginPath();
        ctx.moveTo(model.trail[0][0], model.trail[0][1]);
        for (const [x, y] of model.trail) ctx.lineTo(x, y);
        ctx.strokeStyle = model.color;
        ctx.globalAlpha = 0.45;
        ctx.lineWidth = 2;
        ctx.stroke();
        ctx.globalAlpha = 1;
      }
      for (const marker of model.markers) {
        ctx.beginPath();
        ctx.arc(marker.x, marker.y, 4, 0, Math.PI * 2);
        if (marker.hollow) {
          ctx.strokeStyle = model.color;
          ctx.lineWidth = 1.5;
          ctx.stroke();
        } else {
          ctx.fillStyle = model.color;
          ctx.fill();
        }
      }
      if (model.position) {
        const [x, y] = model.position;
        ctx.beginPath();
        ctx.arc(x, y, 8, 0, Math.PI * 2);
        ctx.fillStyle = model.color;
        ctx.fill();
        ctx.font = "22px system-ui, sans-serif";
        ctx.fillText(model.word, x + 12, y - 10);
      }
    }
  }
}
