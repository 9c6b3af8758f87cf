// Timing helpers for the live preview loop.

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), ms);
  };
}

/**
 * At most one request in flight: starting a new task aborts the previous
 * one, and results of superseded tasks are dropped.
 */
export class LatestOnly {
  private controller: AbortController | null = null;
  private generation = 0;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T | undefined> {
    this.controller?.abort();
    this.controller = new AbortController();
    const myGeneration = ++this.generation;
    try {
      const result = await task(this.controller.signal);
      return myGeneration === this.generation ? result : undefined;
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return undefined;
      if (myGeneration !== this.generation) return undefined;
      throw err;
    }
  }
}
