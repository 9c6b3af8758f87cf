// Session state for the steering loop. Pure data + transition helpers so
// the logic is testable without a DOM; main.ts renders from this.

import type { GenerateRequest, Variant } from "./api";

export type MethodTab = "assisted" | "automatic";

export interface UploadState {
  token: string;
  width: number;
  height: number;
  filename: string;
}

export interface Params {
  width: number;
  height: number;
  rows: number;
  norm_min: number;
  norm_max: number;
  place_max: number;
  tau: number;
  skip_dark: boolean;
  seed: number | null; // null: let the server pick (echoed back)
  variants: number;
}

export interface VariantView {
  seed: number;
  svg: string;
  thumb: string;
  pinned: boolean;
}

export interface SessionState {
  tab: MethodTab;
  configText: string;
  upload: UploadState | null;
  params: Params;
  gallery: VariantView[];
  pinned: VariantView[];
  /** True when params/config changed after the gallery was generated. */
  stale: boolean;
  /** The request that produced the current gallery, for staleness checks. */
  galleryRequest: string | null;
}

export function newSessionState(): SessionState {
  return {
    tab: "assisted",
    configText: "",
    upload: null,
    params: {
      width: 800,
      height: 600,
      rows: 16,
      norm_min: 0.0,
      norm_max: 1.0,
      place_max: 0.98,
      tau: 0.05,
      skip_dark: false,
      seed: null,
      variants: 4,
    },
    gallery: [],
    pinned: [],
    stale: false,
    galleryRequest: null,
  };
}

export class RequestProblem extends Error {}

/** Build the generate payload for the active tab, validating UI state. */
export function requestPayload(state: SessionState): GenerateRequest {
  const p = state.params;
  const seed = p.seed === null ? {} : { seed: p.seed };
  if (state.tab === "assisted") {
    if (!state.configText.trim()) throw new RequestProblem("config is empty");
    return {
      method: "assisted",
      config_text: state.configText,
      width: p.width,
      height: p.height,
      variants: p.variants,
      ...seed,
    };
  }
  if (!state.upload) throw new RequestProblem("upload an image first");
  return {
    method: "automatic",
    image_ref: state.upload.token,
    rows: p.rows,
    norm_min: p.norm_min,
    norm_max: p.norm_max,
    place_max: p.place_max,
    tau: p.tau,
    skip_dark: p.skip_dark,
    variants: p.variants,
    ...seed,
  };
}

/** Any input change flags the displayed gallery as stale until regenerated. */
export function markChanged(state: SessionState): void {
  if (state.gallery.length > 0) state.stale = true;
}

export function applyResults(state: SessionState, variants: Variant[], request: GenerateRequest): void {
  state.gallery = variants.map((v) => ({
    seed: v.seed,
    svg: v.svg,
    thumb: v.thumbnail_png_base64,
    pinned: false,
  }));
  state.stale = false;
  state.galleryRequest = JSON.stringify(request);
}

export function togglePin(state: SessionState, seed: number): void {
  const inGallery = state.gallery.find((v) => v.seed === seed);
  if (inGallery && !inGallery.pinned) {
    inGallery.pinned = true;
    state.pinned.push({ ...inGallery });
    return;
  }
  if (inGallery) inGallery.pinned = false;
  state.pinned = state.pinned.filter((v) => v.seed !== seed);
}

/** CLI line that regenerates a variant byte-identically. */
export function reproduceCommand(state: SessionState, seed: number): string {
  const p = state.params;
  if (state.tab === "assisted") {
    return (
      `modgrid assisted --config layout.mcfg ` +
      `--width ${p.width} --height ${p.height} --seed ${seed} -o variant_${seed}`
    );
  }
  const image = state.upload ? state.upload.filename : "input.png";
  const skip = p.skip_dark ? " --skip-dark" : "";
  return (
    `modgrid auto --image ${image} --rows ${p.rows} ` +
    `--norm-min ${p.norm_min} --norm-max ${p.norm_max} ` +
    `--place-max ${p.place_max} --tau ${p.tau}${skip} ` +
    `--seed ${seed} -o variant_${seed}`
  );
}
