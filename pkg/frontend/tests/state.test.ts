import { describe, expect, it } from "vitest";

import type { Variant } from "../src/api";
import {
  applyResults,
  markChanged,
  newSessionState,
  reproduceCommand,
  requestPayload,
  RequestProblem,
  togglePin,
} from "../src/state";

function variants(...seeds: number[]): Variant[] {
  return seeds.map((seed) => ({
    seed,
    svg: `<svg data-seed="${seed}"></svg>`,
    thumbnail_png_base64: "aGk=",
  }));
}

describe("requestPayload", () => {
  it("builds an assisted payload from the editor state", () => {
    const s = newSessionState();
    s.configText = "0*1\n2";
    s.params.width = 300;
    s.params.height = 200;
    s.params.variants = 3;
    s.params.seed = 42;
    expect(requestPayload(s)).toEqual({
      method: "assisted",
      config_text: "0*1\n2",
      width: 300,
      height: 200,
      variants: 3,
      seed: 42,
    });
  });

  it("omits the seed when unset so the server picks one", () => {
    const s = newSessionState();
    s.configText = "1";
    expect("seed" in requestPayload(s)).toBe(false);
  });

  it("rejects an empty assisted config", () => {
    const s = newSessionState();
    s.configText = "  \n";
    expect(() => requestPayload(s)).toThrow(RequestProblem);
  });

  it("builds an automatic payload from upload + sliders", () => {
    const s = newSessionState();
    s.tab = "automatic";
    s.upload = { token: "t0k", width: 64, height: 32, filename: "photo.png" };
    s.params.rows = 8;
    s.params.tau = 0.2;
    const payload = requestPayload(s);
    expect(payload).toMatchObject({
      method: "automatic",
      image_ref: "t0k",
      rows: 8,
      tau: 0.2,
      norm_min: 0,
      norm_max: 1,
      place_max: 0.98,
      skip_dark: false,
    });
  });

  it("requires an upload for automatic mode", () => {
    const s = newSessionState();
    s.tab = "automatic";
    expect(() => requestPayload(s)).toThrow(RequestProblem);
  });
});

describe("staleness invariant", () => {
  it("flags the gallery stale on changes and clears on regenerate", () => {
    const s = newSessionState();
    s.configText = "1";
    applyResults(s, variants(5, 6), requestPayload(s));
    expect(s.stale).toBe(false);
    expect(s.gallery.map((v) => v.seed)).toEqual([5, 6]);

    markChanged(s); // any parameter widget change
    expect(s.stale).toBe(true);

    applyResults(s, variants(9), requestPayload(s));
    expect(s.stale).toBe(false);
  });

  it("does not flag before anything is displayed", () => {
    const s = newSessionState();
    markChanged(s);
    expect(s.stale).toBe(false);
  });
});

describe("pinning", () => {
  it("keeps pinned variants across regeneration", () => {
    const s = newSessionState();
    s.configText = "1";
    applyResults(s, variants(1, 2), requestPayload(s));
    togglePin(s, 2);
    expect(s.pinned.map((v) => v.seed)).toEqual([2]);

    applyResults(s, variants(7, 8), requestPayload(s));
    expect(s.pinned.map((v) => v.seed)).toEqual([2]); // survives refresh

    togglePin(s, 2); // unpin from the pinned strip
    expect(s.pinned).toEqual([]);
  });
});

describe("reproduceCommand", () => {
  it("regenerates an automatic variant byte-identically via the CLI", () => {
    const s = newSessionState();
    s.tab = "automatic";
    s.upload = { token: "t", width: 10, height: 10, filename: "cat.png" };
    s.params.rows = 12;
    s.params.tau = 0.1;
    s.params.place_max = 0.9;
    expect(reproduceCommand(s, 77)).toBe(
      "modgrid auto --image cat.png --rows 12 --norm-min 0 --norm-max 1 " +
        "--place-max 0.9 --tau 0.1 --seed 77 -o variant_77",
    );
  });

  it("includes skip-dark when set", () => {
    const s = newSessionState();
    s.tab = "automatic";
    s.upload = { token: "t", width: 10, height: 10, filename: "cat.png" };
    s.params.skip_dark = true;
    expect(reproduceCommand(s, 1)).toContain("--skip-dark");
  });

  it("covers assisted variants too", () => {
    const s = newSessionState();
    s.params.width = 640;
    s.params.height = 480;
    expect(reproduceCommand(s, 3)).toBe(
      "modgrid assisted --config layout.mcfg --width 640 --height 480 --seed 3 -o variant_3",
    );
  });
});
