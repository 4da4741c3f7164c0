/** Typed client for the projection JSON API. Field names mirror the wire format. */

export interface KeyframeJson {
  slice: number;
  x: number;
  y: number;
}

export interface TrajectoryJson {
  word: string;
  word_index: number;
  empty: boolean;
  keyframes: KeyframeJson[];
  segment_offsets: number[];
  frames: [number, number][];
}

export interface DiagnosticsJson {
  eigenvalues: number[];
  stress: number;
  stress_unordered: number;
  excluded_points: number;
}

export interface ProjectionResponse {
  slice_labels: string[];
  points: ([number, number] | null)[][];
  trajectories: TrajectoryJson[] | null;
  diagnostics: DiagnosticsJson;
}

export interface MetaResponse {
  format_version: number;
  n: number;
  operator: string;
  dim: number;
  dim_out: number;
  slices: {
    start_year: number;
    end_year: number;
    width_years: number;
    slice_count: number;
  };
  entry_count: number;
  vocabulary_size: number;
}

/** Server-reported failure; `detail` is surfaced verbatim in the UI. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `request failed with status ${response.status}`;
    try {
      const body = (await response.json()) as { detail?: unknown };
      if (typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the generic message
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function fetchProjection(
  baseUrl: string,
  words: string[],
): Promise<ProjectionResponse> {
  const encoded = encodeURIComponent(words.join(","));
  return getJson(`${baseUrl}/api/v1/projection?words=${encoded}&frames=true`);
}

export function fetchMeta(baseUrl: string): Promise<MetaResponse> {
  return getJson(`${baseUrl}/api/v1/meta`);
}
