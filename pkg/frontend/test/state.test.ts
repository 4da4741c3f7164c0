import { describe, expect, it } from "vitest";

import type { ProjectionResponse, TrajectoryJson } from "../src/api.js";
import { renderModel } from "../src/draw.js";
import { frameIndexAt, positionAt, STEPS_PER_SLICE, ViewState } from "../src/state.js";

// keyframes at slices 0, 2, 3 (slice 1 bridged), frames 8-connected
const trajectory: TrajectoryJson = {
  word: "alpha",
  word_index: 0,
  empty: false,
  keyframes: [
    { slice: 0, x: 0, y: 0 },
    { slice: 2, x: 4, y: 0 },
    { slice: 3, x: 4, y: 2 },
  ],
  segment_offsets: [0, 4, 6],
  frames: [
    [0, 0], [1, 0], [2, 0], [3, 0], [4, 0], [4, 1], [4, 2],
  ],
};

const emptyTrajectory: TrajectoryJson = {
  word: "ghost",
  word_index: 1,
  empty: true,
  keyframes: [],
  segment_offsets: [],
  frames: [],
};

const response: ProjectionResponse = {
  slice_labels: ["1900-1904", "1905-1909", "1910-1914", "1915-1919"],
  points: [
    [[0, 0], null, [4, 0], [4, 2]],
    [null, null, null, null],
  ],
  trajectories: [trajectory, emptyTrajectory],
  diagnostics: { eigenvalues: [], stress: 0, stress_unordered: 0, excluded_points: 5 },
};

function loadedState(): ViewState {
  const state = new ViewState();
  const token = state.beginRequest(["alpha", "ghost"]);
  state.acceptResponse(token, response);
  state.pause();
  return state;
}

describe("frameIndexAt", () => {
  it("lands exactly on segment offsets at keyframe ticks", () => {
    expect(frameIndexAt(trajectory, 0)).toBe(0);
    expect(frameIndexAt(trajectory, 2)).toBe(4);
    expect(frameIndexAt(trajectory, 3)).toBe(6);
  });

  it("holds before the first and after the last keyframe", () => {
    expect(frameIndexAt(trajectory, -1)).toBe(0);
    expect(frameIndexAt(trajectory, 3.7)).toBe(6);
    expect(frameIndexAt(trajectory, 99)).toBe(6);
  });

  it("interpolates linearly between offsets", () => {
    // halfway between slice 0 (offset 0) and slice 2 (offset 4)
    expect(frameIndexAt(trajectory, 1)).toBe(2);
    expect(frameIndexAt(trajectory, 2.5)).toBe(5);
  });

  it("is monotone along the timeline", () => {
    let previous = -1;
    for (let u = 0; u <= 3; u += 1 / STEPS_PER_SLICE) {
      const index = frameIndexAt(trajectory, u)!;
      expect(index).toBeGreaterThanOrEqual(previous);
      previous = index;
    }
  });

  it("returns null for an empty trajectory", () => {
    expect(frameIndexAt(emptyTrajectory, 1)).toBeNull();
    expect(positionAt(emptyTrajectory, 1)).toBeNull();
  });
});

describe("ViewState", () => {
  it("sizes the timeline from the slice count", () => {
    const state = loadedState();
    expect(state.timelineLength).toBe(3 * STEPS_PER_SLICE + 1);
  });

  it("scrubbing to the first and last ticks hits the endpoint keyframes", () => {
    const state = loadedState();
    state.scrubToFrame(0);
    expect(state.positions()[0]).toEqual([0, 0]);
    state.scrubToFrame(state.lastFrame);
    expect(state.positions()[0]).toEqual([4, 2]);
  });

  it("scrubbing onto any keyframe tick reproduces the keyframe exactly", () => {
    const state = loadedState();
    for (const keyframe of trajectory.keyframes) {
      state.scrubToSlice(keyframe.slice);
      expect(state.positions()[0]).toEqual([keyframe.x, keyframe.y]);
    }
  });

  it("pause then resume continues from the current frame", () => {
    const state = loadedState();
    state.scrubToFrame(10);
    state.play();
    state.advance(1000 / state.speed); // one sub-step
    expect(state.currentFrame).toBe(11);
    state.pause();
    state.advance(5000);
    expect(state.currentFrame).toBe(11);
    state.play();
    state.advance(1000 / state.speed);
    expect(state.currentFrame).toBe(12);
  });

  it("stops at the end of the timeline", () => {
    const state = loadedState();
    state.play();
    state.advance(3600_000);
    expect(state.currentFrame).toBe(state.lastFrame);
    expect(state.playing).toBe(false);
  });

  it("discards stale responses by sequence number", () => {
    const state = new ViewState();
    const first = state.beginRequest(["old"]);
    const second = state.beginRequest(["new"]);
    expect(state.acceptResponse(first, response)).toBe(false);
    expect(state.loadedResponse).toBeNull();
    expect(state.acceptResponse(second, response)).toBe(true);
    expect(state.loadedResponse).toBe(response);
  });
});

describe("renderModel", () => {
  it("draws words at exactly the state positions", () => {
    const state = loadedState();
    state.scrubToSlice(2);
    const models = renderModel(state);
    expect(models[0].position).toEqual([4, 0]);
    expect(models[1].position).toBeNull();
    expect(models[1].empty).toBe(true);
  });

  it("marks bridged slices hollow and data slices filled", () => {
    const state = loadedState();
    state.scrubToFrame(state.lastFrame);
    const markers = renderModel(state)[0].markers;
    const bySlice = new Map(markers.map((m) => [m.slice, m]));
    expect(bySlice.get(0)!.hollow).toBe(false);
    expect(bySlice.get(2)!.hollow).toBe(false);
    expect(bySlice.get(1)!.hollow).toBe(true);
    // the hollow marker sits on the bridged path
    expect(bySlice.get(1)!.x).toBe(2);
    expect(bySlice.get(1)!.y).toBe(0);
  });

  it("reveals markers only once the playhead reaches them", () => {
    const state = loadedState();
    state.scrubToSlice(0);
    const markers = renderModel(state)[0].markers;
    expect(markers.map((m) => m.slice)).toEqual([0]);
  });
});
