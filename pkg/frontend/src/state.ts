/** Playback state and the timeline-to-frame mapping. No DOM access here. */

import type { ProjectionResponse, TrajectoryJson } from "./api.js";

/** Animation sub-steps between consecutive slice ticks. */
export const STEPS_PER_SLICE = 24;

/**
 * Maps the global slice-time clock onto each word's own frame list.
 *
 * Slice-time u runs continuously over [0, slice_count - 1]. For a word with
 * keyframes at slices s_0 < ... < s_m and frame offsets o_0 < ... < o_m, the
 * frame index is held at o_0 before s_0 and at o_m after s_m, and linearly
 * interpolated between consecutive offsets in between. At u = s_j the index
 * is exactly o_j, so every keyframe tick renders exactly at the server's
 * keyframe pixel.
 */
export function frameIndexAt(trajectory: TrajectoryJson, sliceTime: number): number | null {
  const keyframes = trajectory.keyframes;
  if (keyframes.length === 0) return null;
  const offsets = trajectory.segment_offsets;
  if (sliceTime <= keyframes[0].slice) return offsets[0];
  const last = keyframes.length - 1;
  if (sliceTime >= keyframes[last].slice) return offsets[last];
  let j = 0;
  while (j < last && keyframes[j + 1].slice < sliceTime) j++;
  const s0 = keyframes[j].slice;
  const s1 = keyframes[j + 1].slice;
  if (sliceTime === s1) return offsets[j + 1];
  const fraction = (sliceTime - s0) / (s1 - s0);
  return offsets[j] + Math.round(fraction * (offsets[j + 1] - offsets[j]));
}

export function positionAt(
  trajectory: TrajectoryJson,
  sliceTime: number,
): [number, number] | null {
  const index = frameIndexAt(trajectory, sliceTime);
  if (index === null) return null;
  return trajectory.frames[index];
}

export class ViewState {
  queryWords: string[] = [];
  currentFrame = 0;
  playing = false;
  /** Sub-steps advanced per second while playing. */
  speed = 48;
  loadedResponse: ProjectionResponse | null = null;

  private latestRequest = 0;
  private fractionalFrame = 0;

  /** Total sub-steps on the global timeline (>= 1). */
  get timelineLength(): number {
    const response = this.loadedResponse;
    if (!response || response.slice_labels.length === 0) return 1;
    return (response.slice_labels.length - 1) * STEPS_PER_SLICE + 1;
  }

  get lastFrame(): number {
    return this.timelineLength - 1;
  }

  /** Continuous position on the slice axis, in [0, slice_count - 1]. */
  get sliceTime(): number {
    return this.currentFrame / STEPS_PER_SLICE;
  }

  /** The slice whose tick is nearest the playhead (for labels). */
  get nearestSlice(): number {
    return Math.round(this.sliceTime);
  }

  get trajectories(): TrajectoryJson[] {
    return this.loadedResponse?.trajectories ?? [];
  }

  /** Start a request; the returned token invalidates all earlier ones. */
  beginRequest(words: string[]): number {
    this.queryWords = words;
    return ++this.latestRequest;
  }

  /** Install a response unless a newer request has started. Returns whether it won. */
  acceptResponse(token: number, response: ProjectionResponse): boolean {
    if (token !== this.latestRequest) return false;
    this.loadedResponse = response;
    this.currentFrame = 0;
    this.fractionalFrame = 0;
    this.playing = true;
    return true;
  }

  scrubToFrame(frame: number): void {
    const clamped = Math.min(Math.max(Math.round(frame), 0), this.lastFrame);
    this.currentFrame = clamped;
    this.fractionalFrame = clamped;
  }

  /** Jump exactly onto a slice tick. */
  scrubToSlice(slice: number): void {
    this.scrubToFrame(slice * STEPS_PER_SLICE);
  }

  play(): void {
    if (this.currentFrame >= this.lastFrame) this.scrubToFrame(0);
    this.playing = true;
  }

  pause(): void {
    this.playing = false;
  }

  toggle(): void {
    if (this.playing) this.pause();
    else this.play();
  }

  /** Advance the playhead by elapsed wall time; stops at the end. */
  advance(deltaMs: number): void {
    if (!this.playing || !this.loadedResponse) return;
    this.fractionalFrame += (this.speed * deltaMs) / 1000;
    if (this.fractionalFrame >= this.lastFrame) {
      this.fractionalFrame = this.lastFrame;
      this.playing = false;
    }
    this.currentFrame = Math.round(this.fractionalFrame);
  }

  /** Current [x, y] per trajectory; null for words without data. */
  positions(): ([number, number] | null)[] {
    return this.trajectories.map((t) => positionAt(t, this.sliceTime));
  }
}
