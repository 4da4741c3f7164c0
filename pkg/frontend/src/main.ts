/** DOM wiring: query form, canvas, timeline scrubber, playback controls. */

import { ApiError, fetchProjection } from "./api.js";
import { CanvasPainter, colorFor, renderModel } from "./draw.js";
import { STEPS_PER_SLICE, ViewState } from "./state.js";

const state = new ViewState();

const queryInput = document.getElementById("query") as HTMLInputElement;
const submitButton = document.getElementById("submit") as HTMLButtonElement;
const errorBanner = document.getElementById("error") as HTMLDivElement;
const retryButton = document.getElementById("retry") as HTMLButtonElement;
const canvas = document.getElementById("plane") as HTMLCanvasElement;
const scrubber = document.getElementById("scrubber") as HTMLInputElement;
const playButton = document.getElementById("play") as HTMLButtonElement;
const speedSelect = document.getElementById("speed") as HTMLSelectElement;
const sliceLabel = document.getElementById("slice-label") as HTMLSpanElement;
const legend = document.getElementById("legend") as HTMLUListElement;

const painter = new CanvasPainter(canvas);

function parseWords(): string[] {
  return queryInput.value
    .split(/[,\s]+/)
    .map((w) => w.trim())
    .filter((w) => w.length > 0);
}

function showError(message: string, canRetry: boolean): void {
  errorBanner.hidden = false;
  errorBanner.querySelector("span")!.textContent = message;
  retryButton.hidden = !canRetry;
}

function clearError(): void {
  errorBanner.hidden = true;
}

async function submitQuery(): Promise<void> {
  const words = parseWords();
  if (words.length === 0) return;
  clearError();
  submitButton.disabled = true;
  const token = state.beginRequest(words);
  try {
    const response = await fetchProjection("", words);
    if (!state.acceptResponse(token, response)) return; // superseded
    scrubber.max = String(state.lastFrame);
    scrubber.value = "0";
    buildLegend();
  } catch (err) {
    if (err instanceof ApiError) {
      showError(err.message, false);
    } else {
      showError("network failure; the service may be down", true);
    }
  } finally {
    submitButton.disabled = parseWords().length === 0;
  }
}

function buildLegend(): void {
  legend.replaceChildren();
  state.trajectories.forEach((trajectory) => {
    const item = document.createElement("li");
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = colorFor(trajectory.word_index);
    item.append(swatch, trajectory.word);
    if (trajectory.empty) item.append(" (no data)");
    legend.append(item);
  });
}

function syncControls(): void {
  scrubber.value = String(state.currentFrame);
  playButton.textContent = state.playing ? "Pause" : "Play";
  const labels = state.loadedResponse?.slice_labels ?? [];
  sliceLabel.textContent = labels[state.nearestSlice] ?? "";
}

queryInput.addEventListener("input", () => {
  submitButton.disabled = parseWords().length === 0;
});
submitButton.addEventListener("click", () => void submitQuery());
queryInput.addEventListener("keydown", (event) => {
  if (event.key === "Enter" && !submitButton.disabled) void submitQuery();
});
retryButton.addEventListener("click", () => void submitQuery());

scrubber.addEventListener("input", () => {
  state.pause();
  state.scrubToFrame(Number(scrubber.value));
});
playButton.addEventListener("click", () => state.toggle());
speedSelect.addEventListener("change", () => {
  state.speed = Number(speedSelect.value) * STEPS_PER_SLICE;
});
state.speed = Number(speedSelect.value) * STEPS_PER_SLICE;

submitButton.disabled = true;

let lastTick = performance.now();
function loop(now: number): void {
  state.advance(now - lastTick);
  lastTick = now;
  painter.paint(renderModel(state));
  syncControls();
  requestAnimationFrame(loop);
}
requestAnimationFrame(loop);
