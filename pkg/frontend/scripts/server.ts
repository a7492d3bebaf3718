/**
 * Spawns the Python session API for recording fixtures and end-to-end runs.
 * The package must be importable by python3 (editable install of the
 * repository root is enough).
 */

import { spawn } from "node:child_process";

export interface RunningServer {
  baseUrl: string;
  stop(): Promise<void>;
}

async function tryStart(port: number): Promise<RunningServer | null> {
  const child = spawn(
    "python3",
    ["-m", "seu.cli", "serve", "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let output = "";
  child.stdout?.on("data", (chunk: Buffer) => {
    output += chunk.toString();
  });
  child.stderr?.on("data", (chunk: Buffer) => {
    output += chunk.toString();
  });
  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 30000;
  for (;;) {
    if (child.exitCode !== null) {
      // port taken or import failure; caller decides whether to retry
      if (/address already in use/i.test(output)) {
        return null;
      }
      throw new Error(`server exited before answering:\n${output}`);
    }
    try {
      // any served response, 404 included, means the app is up
      const probe = await fetch(`${baseUrl}/sessions/probe/report`);
      if (probe.status < 500) {
        break;
      }
    } catch {
      // connection refused: keep waiting
    }
    if (Date.now() > deadline) {
      child.kill("SIGKILL");
      throw new Error(`server did not come up in time:\n${output}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 120));
  }
  return {
    baseUrl,
    stop: () =>
      new Promise<void>((resolve) => {
        child.once("exit", () => resolve());
        child.kill("SIGTERM");
        const force = setTimeout(() => child.kill("SIGKILL"), 3000);
        force.unref();
      }),
  };
}

export async function startServer(): Promise<RunningServer> {
  for (let attempt = 0; attempt < 4; attempt += 1) {
    const port = 8400 + Math.floor(Math.random() * 2000);
    const server = await tryStart(port);
    if (server !== null) {
      return server;
    }
  }
  throw new Error("could not find a free port for the session API");
}
