// Typed client for the preview service. The UI never computes placements
// itself; everything comes from these endpoints.

export interface PaletteModule {
  index_char: string;
  svg: string;
  mean_brightness: number;
}

export interface UploadInfo {
  token: string;
  width: number;
  height: number;
}

export interface Variant {
  seed: number;
  svg: string;
  thumbnail_png_base64: string;
}

export interface AssistedRequest {
  method: "assisted";
  config_text: string;
  width: number;
  height: number;
  variants: number;
  seed?: number;
}

export interface AutomaticRequest {
  method: "automatic";
  image_ref: string;
  rows: number;
  norm_min: number;
  norm_max: number;
  place_max: number;
  tau: number;
  skip_dark: boolean;
  variants: number;
  seed?: number;
}

export type GenerateRequest = AssistedRequest | AutomaticRequest;

export class ApiError extends Error {
  status: number;
  fieldErrors: Record<string, string>;

  constructor(status: number, message: string, fieldErrors: Record<string, string> = {}) {
    super(message);
    this.status = status;
    this.fieldErrors = fieldErrors;
  }
}

async function raise(response: Response): Promise<never> {
  let detail = `${response.status} ${response.statusText}`;
  let fields: Record<string, string> = {};
  try {
    const body = await response.json();
    if (body && typeof body === "object") {
      if (typeof body.detail === "string") detail = body.detail;
      if (body.errors && typeof body.errors === "object") {
        fields = body.errors as Record<string, string>;
        detail = Object.entries(fields)
          .map(([k, v]) => `${k}: ${v}`)
          .join("; ");
      }
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, detail, fields);
}

export async function fetchPalette(base = ""): Promise<PaletteModule[]> {
  const r = await fetch(`${base}/api/palette`);
  if (!r.ok) await raise(r);
  return (await r.json()).modules;
}

export async function uploadImage(data: Blob | ArrayBuffer, base = ""): Promise<UploadInfo> {
  const r = await fetch(`${base}/api/upload`, { method: "POST", body: data });
  if (!r.ok) await raise(r);
  return r.json();
}

export async function generate(
  request: GenerateRequest,
  signal?: AbortSignal,
  base = "",
): Promise<Variant[]> {
  const r = await fetch(`${base}/api/generate`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(request),
    signal,
  });
  if (!r.ok) await raise(r);
  return (await r.json()).variants;
}

export async function fetchTemplate(rows: number, cols: number, base = ""): Promise<string> {
  const r = await fetch(`${base}/api/template?rows=${rows}&cols=${cols}`);
  if (!r.ok) await raise(r);
  return r.text();
}
