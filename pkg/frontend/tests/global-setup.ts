/**
 * Boots the real likestarter service for the UI flow tests: fresh journal,
 * faucet on, zero voting period so finalization works inside a test run.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const BASE_URL = "http://127.0.0.1:8977";

let server: ChildProcess | undefined;

async function waitForService(url: string, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${url}/state/hash`);
      if (response.ok) return;
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error(`service did not come up at ${url}: ${lastError}`);
}

export default async function setup(): Promise<() => void> {
  const dir = mkdtempSync(join(tmpdir(), "likestarter-ui-"));
  const configPath = join(dir, "config.json");
  writeFileSync(configPath, JSON.stringify({ min_voting_period_ms: 0 }));

  server = spawn(
    "likestarter",
    [
      "--journal", join(dir, "ui.jsonl"),
      "--config", configPath,
      "serve",
      "--listen", "127.0.0.1:8977",
      "--faucet",
    ],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stderr?.on("data", (chunk: Buffer) => {
    const text = chunk.toString();
    if (text.includes("Traceback")) console.error(text);
  });
  await waitForService(BASE_URL, 60_000);

  return () => {
    server?.kill("SIGTERM");
  };
}
