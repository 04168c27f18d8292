/** Fixed-interval polling; the UI pulls, the API never pushes. */

export const DEFAULT_POLL_INTERVAL_MS = 5000;

export interface Poller {
  start(): void;
  stop(): void;
  /** Run one cycle immediately (also what the interval triggers). */
  tick(): Promise<void>;
}

export function createPoller(
  fn: () => Promise<void>,
  intervalMs: number = DEFAULT_POLL_INTERVAL_MS,
): Poller {
  let timer: ReturnType<typeof setInterval> | null = null;
  const tick = async () => {
    try {
      await fn();
    } catch {
      /* polling errors are surfaced by the view itself on user action */
    }
  };
  return {
    start() {
      if (timer === null) {
        void tick();
        timer = setInterval(() => void tick(), intervalMs);
      }
    },
    stop() {
      if (timer !== null) {
        clearInterval(timer);
        timer = null;
      }
    },
    tick,
  };
}
