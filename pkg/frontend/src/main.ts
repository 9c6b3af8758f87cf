// DOM wiring for the steering loop. All placement math happens on the
// server; this file only synchronizes inputs, previews, and downloads.

import { ApiError, fetchPalette, fetchTemplate, generate, uploadImage } from "./api";
import type { PaletteModule } from "./api";
import { debounce, LatestOnly } from "./debounce";
import {
  anyRepairs,
  cycleCell,
  gridToText,
  setCell,
  templateGrid,
  textToGrid,
} from "./grid";
import type { GridModel } from "./grid";
import {
  applyResults,
  markChanged,
  newSessionState,
  reproduceCommand,
  requestPayload,
  RequestProblem,
  togglePin,
} from "./state";
import type { MethodTab, SessionState, VariantView } from "./state";

const PREVIEW_DEBOUNCE_MS = 300;

const state: SessionState = newSessionState();
let indexChars: string[] = [];
let grid: GridModel | null = null;
const inflight = new LatestOnly();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const configText = el<HTMLTextAreaElement>("config-text");
const paintGrid = el<HTMLDivElement>("paint-grid");
const gallery = el<HTMLDivElement>("gallery");
const pinnedBox = el<HTMLDivElement>("pinned");
const statusLine = el<HTMLSpanElement>("status");

// ---------------------------------------------------------------------------
// status + errors
// ---------------------------------------------------------------------------

function setStatus(text: string, isError = false): void {
  statusLine.textContent = text;
  statusLine.classList.toggle("error", isError);
}

const FIELD_CONTROLS: Record<string, string> = {
  rows: "p-rows",
  norm_min: "p-norm-min",
  norm_max: "p-norm-max",
  place_max: "p-place-max",
  tau: "p-tau",
  variants: "p-variants",
  seed: "p-seed",
  width: "as-width",
  height: "as-height",
  config_text: "config-text",
  image_ref: "file-input",
};

function clearFieldErrors(): void {
  for (const id of Object.values(FIELD_CONTROLS)) {
    document.getElementById(id)?.classList.remove("field-error");
  }
}

function showError(err: unknown): void {
  clearFieldErrors();
  if (err instanceof ApiError) {
    for (const field of Object.keys(err.fieldErrors)) {
      const id = FIELD_CONTROLS[field];
      if (id) document.getElementById(id)?.classList.add("field-error");
    }
    setStatus(err.message, true);
  } else if (err instanceof RequestProblem) {
    setStatus(err.message, true);
  } else {
    setStatus(String(err), true);
  }
}

// ---------------------------------------------------------------------------
// palette sheet
// ---------------------------------------------------------------------------

function renderPalette(modules: PaletteModule[]): void {
  const list = el<HTMLDivElement>("palette-list");
  list.replaceChildren();
  for (const m of modules) {
    const item = document.createElement("figure");
    item.className = "module";
    item.innerHTML = m.svg;
    const caption = document.createElement("figcaption");
    caption.textContent = `${m.index_char} · ${m.mean_brightness.toFixed(2)}`;
    item.appendChild(caption);
    list.appendChild(item);
  }
}

// ---------------------------------------------------------------------------
// config editor: paint grid <-> text pane
// ---------------------------------------------------------------------------

function renderPaintGrid(): void {
  paintGrid.replaceChildren();
  const note = el<HTMLParagraphElement>("repair-note");
  if (!grid) {
    note.textContent = "empty configuration";
    return;
  }
  const g = grid;
  note.textContent = anyRepairs(g)
    ? "highlighted cells were repaired (padded or read as *)"
    : "";
  for (let r = 0; r < g.rows; r++) {
    const rowEl = document.createElement("div");
    rowEl.className = "paint-row";
    for (let c = 0; c < g.cols; c++) {
      const cell = document.createElement("button");
      cell.className = "paint-cell";
      cell.textContent = g.cells[r][c];
      cell.dataset.value = g.cells[r][c];
      if (g.repaired[r][c]) cell.classList.add("repaired");
      cell.addEventListener("click", () => {
        grid = setCell(g, r, c, cycleCell(g.cells[r][c], indexChars));
        configText.value = gridToText(grid);
        renderPaintGrid();
        onInputsChanged();
      });
      rowEl.appendChild(cell);
    }
    paintGrid.appendChild(rowEl);
  }
}

function syncFromText(): void {
  state.configText = configText.value;
  grid = textToGrid(configText.value);
  renderPaintGrid();
  onInputsChanged();
}

// ---------------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------------

function downloadBlob(name: string, blob: Blob): void {
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = name;
  a.click();
  setTimeout(() => URL.revokeObjectURL(url), 5000);
}

function pngBlob(base64: string): Blob {
  const raw = atob(base64);
  const bytes = new Uint8Array(raw.length);
  for (let i = 0; i < raw.length; i++) bytes[i] = raw.charCodeAt(i);
  return new Blob([bytes], { type: "image/png" });
}

function variantCard(v: VariantView, pinnedView: boolean): HTMLElement {
  const card = document.createElement("div");
  card.className = "variant";
  const preview = document.createElement("div");
  preview.className = "variant-preview";
  preview.innerHTML = v.svg; // vector inline; thumbnail only for PNG download
  card.appendChild(preview);

  const bar = document.createElement("div");
  bar.className = "variant-bar";
  const label = document.createElement("span");
  label.textContent = `seed ${v.seed}`;
  bar.appendChild(label);

  const pin = document.createElement("button");
  pin.textContent = pinnedView ? "unpin" : v.pinned ? "pinned" : "pin";
  pin.addEventListener("click", () => {
    togglePin(state, v.seed);
    renderGallery();
  });
  bar.appendChild(pin);

  const dlSvg = document.createElement("button");
  dlSvg.textContent = "svg";
  dlSvg.addEventListener("click", () =>
    downloadBlob(`variant_${v.seed}.svg`, new Blob([v.svg], { type: "image/svg+xml" })),
  );
  bar.appendChild(dlSvg);

  const dlPng = document.createElement("button");
  dlPng.textContent = "png";
  dlPng.addEventListener("click", () => downloadBlob(`variant_${v.seed}.png`, pngBlob(v.thumb)));
  bar.appendChild(dlPng);

  const copy = document.createElement("button");
  copy.textContent = "copy command";
  copy.addEventListener("click", () => {
    void navigator.clipboard
      .writeText(reproduceCommand(state, v.seed))
      .then(() => setStatus("reproduce command copied"));
  });
  bar.appendChild(copy);

  card.appendChild(bar);
  return card;
}

function renderGallery(): void {
  gallery.replaceChildren(...state.gallery.map((v) => variantCard(v, false)));
  gallery.classList.toggle("stale", state.stale);
  el<HTMLParagraphElement>("stale-note").hidden = !state.stale;
  pinnedBox.replaceChildren(...state.pinned.map((v) => variantCard(v, true)));
}

// ---------------------------------------------------------------------------
// generation
// ---------------------------------------------------------------------------

async function regenerate(): Promise<void> {
  clearFieldErrors();
  let request;
  try {
    request = requestPayload(state);
  } catch (err) {
    showError(err);
    return;
  }
  setStatus("generating…");
  try {
    const variants = await inflight.run((signal) => generate(request, signal));
    if (!variants) return; // superseded by a newer request
    applyResults(state, variants, request);
    renderGallery();
    setStatus(`${variants.length} variant(s), seeds ${variants[0].seed}…${variants[variants.length - 1].seed}`);
  } catch (err) {
    showError(err);
  }
}

const previewSoon = debounce(() => void regenerate(), PREVIEW_DEBOUNCE_MS);

function onInputsChanged(): void {
  markChanged(state);
  renderGallery();
  if (state.tab === "assisted") previewSoon(); // live preview while editing
}

// ---------------------------------------------------------------------------
// controls wiring
// ---------------------------------------------------------------------------

function bindNumber(id: string, apply: (value: number) => void): void {
  const input = el<HTMLInputElement>(id);
  const sync = () => {
    const value = Number(input.value);
    if (!Number.isNaN(value)) {
      apply(value);
      const output = input.parentElement?.querySelector("output");
      if (output) output.textContent = input.value;
      onInputsChanged();
    }
  };
  input.addEventListener("input", sync);
}

function switchTab(tab: MethodTab): void {
  state.tab = tab;
  el("pane-assisted").hidden = tab !== "assisted";
  el("pane-automatic").hidden = tab !== "automatic";
  el("tab-assisted").classList.toggle("active", tab === "assisted");
  el("tab-automatic").classList.toggle("active", tab === "automatic");
  markChanged(state);
  renderGallery();
}

async function init(): Promise<void> {
  try {
    const modules = await fetchPalette();
    renderPalette(modules);
    indexChars = modules.map((m) => m.index_char);
  } catch (err) {
    showError(err);
  }

  el("tab-assisted").addEventListener("click", () => switchTab("assisted"));
  el("tab-automatic").addEventListener("click", () => switchTab("automatic"));

  configText.addEventListener("input", debounce(syncFromText, PREVIEW_DEBOUNCE_MS));

  el("btn-template").addEventListener("click", () => {
    void (async () => {
      const rows = Number(el<HTMLInputElement>("tpl-rows").value);
      const cols = Number(el<HTMLInputElement>("tpl-cols").value);
      try {
        configText.value = await fetchTemplate(rows, cols);
      } catch {
        // offline fallback: the template format is trivial
        configText.value = gridToText(templateGrid(Math.max(1, rows), Math.max(1, cols)));
      }
      syncFromText();
    })();
  });

  bindNumber("as-width", (v) => (state.params.width = v));
  bindNumber("as-height", (v) => (state.params.height = v));
  bindNumber("p-rows", (v) => (state.params.rows = v));
  bindNumber("p-norm-min", (v) => (state.params.norm_min = v));
  bindNumber("p-norm-max", (v) => (state.params.norm_max = v));
  bindNumber("p-place-max", (v) => (state.params.place_max = v));
  bindNumber("p-tau", (v) => (state.params.tau = v));
  bindNumber("p-variants", (v) => (state.params.variants = v));

  el<HTMLInputElement>("p-skip-dark").addEventListener("change", (e) => {
    state.params.skip_dark = (e.target as HTMLInputElement).checked;
    onInputsChanged();
  });

  const seedInput = el<HTMLInputElement>("p-seed");
  seedInput.addEventListener("input", () => {
    const text = seedInput.value.trim();
    state.params.seed = text === "" ? null : Number(text);
    onInputsChanged();
  });
  el("btn-dice").addEventListener("click", () => {
    seedInput.value = String(Math.floor(Math.random() * 2 ** 32));
    seedInput.dispatchEvent(new Event("input"));
  });

  el<HTMLInputElement>("file-input").addEventListener("change", (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (!file) return;
    void (async () => {
      try {
        const info = await uploadImage(file);
        state.upload = { ...info, filename: file.name };
        el("upload-info").textContent = `${file.name} · ${info.width}×${info.height}`;
        onInputsChanged();
      } catch (err) {
        showError(err);
      }
    })();
  });

  el("btn-generate").addEventListener("click", () => void regenerate());

  // start with a small template so the editor is immediately paintable
  configText.value = gridToText(templateGrid(4, 12));
  syncFromText();
}

void init();
