/** Number formatting kept in lockstep with the backend's 6-decimal rendering. */

export function formatSeconds(seconds: number): string {
  return seconds.toFixed(6);
}

export function formatDelta(seconds: number): string {
  const sign = seconds > 0 ? "+" : "";
  return `${sign}${seconds.toFixed(3)}s`;
}
