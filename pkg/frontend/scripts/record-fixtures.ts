/**
 * Records live API responses into tests/fixtures/.
 *
 * The snapshot tests assert that view models mirror these bodies exactly,
 * so the fixtures must come from the real server, driven with the same
 * request payloads the UI sends (the quiz documents are imported from the
 * application source, not duplicated here).
 *
 *   npm run record-fixtures
 */

import { mkdir, writeFile } from "node:fs/promises";
import { fileURLToPath } from "node:url";

import { ApiClient, ApiError, SessionReport } from "../src/api.js";
import { ALLAIS_QUIZ, ELLSBERG_QUIZ, judgmentFor } from "../src/quizzes.js";
import { compareRational } from "../src/rational.js";
import { startServer } from "./server.js";

const FIXTURES_DIR = fileURLToPath(
  new URL("../../tests/fixtures/", import.meta.url),
);

async function save(name: string, value: unknown): Promise<void> {
  const path = `${FIXTURES_DIR}${name}`;
  await writeFile(path, JSON.stringify(value, null, 2) + "\n");
  console.log(`wrote ${path}`);
}

async function recordElicitation(api: ApiClient): Promise<void> {
  const created = await api.createSession({
    event_description: "it rains tomorrow",
    target_width: "1/1024",
    payoff_scale: "100",
  });
  await save("create_fresh.json", created);
  const firstQuery = await api.query(created.id);
  await save("query_fresh.json", firstQuery);

  // scripted respondent with hidden p = 1/4
  const steps: unknown[] = [];
  let report: SessionReport = created.report;
  let query = firstQuery;
  while (report.status === "active") {
    const cmp = compareRational(query.price, "1/4");
    const response = cmp > 0 ? "bookie" : cmp < 0 ? "player" : "indifferent";
    report = await api.answer(created.id, response);
    steps.push({ query, response, report });
    if (report.status !== "active") {
      break;
    }
    query = await api.query(created.id);
  }
  const final = await api.report(created.id);
  await save("p14_walk.json", { steps, final });

  // error shapes, recorded against the same (now converged) session
  const errors: Record<string, unknown> = {};
  try {
    await api.answer(created.id, "player");
  } catch (error) {
    if (error instanceof ApiError) {
      errors.answer_after_convergence = {
        status: error.status,
        detail: error.detail,
      };
    }
  }
  try {
    await api.report("no-such-session");
  } catch (error) {
    if (error instanceof ApiError) {
      errors.unknown_session = { status: error.status, detail: error.detail };
    }
  }
  const fresh = await api.createSession({ event_description: "error probe" });
  try {
    await api.answer(fresh.id, "maybe");
  } catch (error) {
    if (error instanceof ApiError) {
      errors.unknown_response = { status: error.status, detail: error.detail };
    }
  }
  await save("errors.json", errors);
}

async function recordQuiz(
  api: ApiClient,
  name: string,
  quiz: typeof ALLAIS_QUIZ,
  picks: [0 | 1, 0 | 1],
): Promise<void> {
  const created = await api.createSession({
    event_description: quiz.sessionDescription,
    problem: quiz.problem,
  });
  const first = await api.preference(
    created.id,
    judgmentFor(quiz.situations[0], picks[0]),
  );
  const second = await api.preference(
    created.id,
    judgmentFor(quiz.situations[1], picks[1]),
  );
  await save(name, { create: created, first, second });
}

async function main(): Promise<void> {
  await mkdir(FIXTURES_DIR, { recursive: true });
  const server = await startServer();
  const api = new ApiClient(server.baseUrl);
  try {
    await recordElicitation(api);
    // allais pattern (I, IV): the sure-thing flip
    await recordQuiz(api, "allais_quiz.json", ALLAIS_QUIZ, [0, 1]);
    // allais pattern (I, III): consistent
    await recordQuiz(api, "allais_consistent.json", ALLAIS_QUIZ, [0, 0]);
    // ellsberg pattern (I, IV): ambiguity aversion
    await recordQuiz(api, "ellsberg_quiz.json", ELLSBERG_QUIZ, [0, 1]);
  } finally {
    await server.stop();
  }
}

main().catch((error) => {
  console.error(error);
  process.exitCode = 1;
});
