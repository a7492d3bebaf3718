// @vitest-environment jsdom
/**
 * DOM behaviour against a faked transport that replays recorded API
 * responses. The app's only state source is the response stream, so the
 * displayed numbers must match the fixtures character for character.
 */

import { beforeEach, describe, expect, it } from "vitest";

import type {
  CreateResponse,
  FetchLike,
  OfferQuery,
} from "../src/api.js";
import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import {
  ErrorsFixture,
  loadFixture,
  QuizFixture,
  WalkFixture,
} from "./helpers.js";

const createFresh = loadFixture<CreateResponse>("create_fresh.json");
const queryFresh = loadFixture<OfferQuery>("query_fresh.json");
const walk = loadFixture<WalkFixture>("p14_walk.json");
const allais = loadFixture<QuizFixture>("allais_quiz.json");
const allaisConsistent = loadFixture<QuizFixture>("allais_consistent.json");
const errors = loadFixture<ErrorsFixture>("errors.json");

interface Exchange {
  method: string;
  path: string;
  body?: unknown;
  status?: number;
  reply: unknown;
}

/** Replays a scripted exchange list and records what the app sent. */
class FakeTransport {
  readonly sent: { method: string; path: string; body: unknown }[] = [];
  private script: Exchange[];
  failNext = false;

  constructor(script: Exchange[]) {
    this.script = [...script];
  }

  extend(script: Exchange[]): void {
    this.script.push(...script);
  }

  fetch: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.sent.push({ method, path, body });
    if (this.failNext) {
      this.failNext = false;
      throw new TypeError("fetch failed");
    }
    const next = this.script.shift();
    if (!next) {
      throw new Error(`unscripted request: ${method} ${path}`);
    }
    expect(`${method} ${path}`).toBe(`${next.method} ${next.path}`);
    if (next.body !== undefined) {
      expect(body).toEqual(next.body);
    }
    const status = next.status ?? 200;
    const payload = JSON.stringify(next.reply);
    return {
      ok: status >= 200 && status < 300,
      status,
      text: async () => payload,
    } as Response;
  };
}

function makeApp(transport: FakeTransport): { app: App; root: HTMLElement } {
  const root = document.createElement("div");
  document.body.append(root);
  const app = new App(root, new ApiClient("", transport.fetch));
  app.render();
  return { app, root };
}

function get(root: HTMLElement, testId: string): HTMLElement {
  const el = root.querySelector(`[data-test="${testId}"]`);
  expect(el, testId).not.toBeNull();
  return el as HTMLElement;
}

function absent(root: HTMLElement, testId: string): void {
  expect(root.querySelector(`[data-test="${testId}"]`)).toBeNull();
}

const sessionPath = `/sessions/${createFresh.id}`;

function elicitScript(): Exchange[] {
  return [
    {
      method: "POST",
      path: "/sessions",
      body: {
        event_description: "it rains tomorrow",
        target_width: "1/1024",
        payoff_scale: "100",
      },
      reply: createFresh,
    },
    { method: "GET", path: `${sessionPath}/query`, reply: queryFresh },
  ];
}

async function startElicitation(
  transport: FakeTransport,
): Promise<{ app: App; root: HTMLElement }> {
  const { app, root } = makeApp(transport);
  get(root, "nav-elicit").click();
  (get(root, "config-description") as HTMLInputElement).value =
    "it rains tomorrow";
  get(root, "start-session").click();
  await app.idle();
  return { app, root };
}

beforeEach(() => {
  document.body.textContent = "";
});

describe("elicitation screen", () => {
  it("renders the first offer at the midpoint price", async () => {
    const transport = new FakeTransport(elicitScript());
    const { root } = await startElicitation(transport);

    const price = get(root, "offer-price");
    expect(price.textContent).toBe("0.5000");
    expect(price.getAttribute("title")).toBe("1/2");
    expect(get(root, "offer-framing").textContent).toBe(queryFresh.framing);
    expect(get(root, "offer-money").getAttribute("title")).toBe("50");
    for (const button of ["answer-player", "answer-bookie", "answer-indifferent"]) {
      get(root, button);
    }
    expect(get(root, "interval-lo").getAttribute("title")).toBe(
      createFresh.report.interval.lo,
    );
    expect(get(root, "interval-hi").getAttribute("title")).toBe(
      createFresh.report.interval.hi,
    );
  });

  it("walks the recorded p=1/4 path to the summary card", async () => {
    const [first, second] = walk.steps;
    const transport = new FakeTransport([
      ...elicitScript(),
      {
        method: "POST",
        path: `${sessionPath}/answer`,
        body: { response: "bookie" },
        reply: first!.report,
      },
      { method: "GET", path: `${sessionPath}/query`, reply: second!.query },
      {
        method: "POST",
        path: `${sessionPath}/answer`,
        body: { response: "indifferent" },
        reply: second!.report,
      },
    ]);
    const { app, root } = await startElicitation(transport);

    get(root, "answer-bookie").click();
    await app.idle();
    expect(get(root, "interval-lo").getAttribute("title")).toBe(
      first!.report.interval.lo,
    );
    expect(get(root, "interval-hi").getAttribute("title")).toBe(
      first!.report.interval.hi,
    );
    expect(get(root, "offer-price").getAttribute("title")).toBe(
      second!.query.price,
    );

    get(root, "answer-indifferent").click();
    await app.idle();
    absent(root, "offer-card");
    const fairPrice = get(root, "summary-fair-price");
    expect(fairPrice.textContent).toBe("25.0000");
    expect(fairPrice.getAttribute("title")).toBe("25");
    expect(get(root, "summary-estimate").getAttribute("title")).toBe("1/4");
    expect(get(root, "interval-lo").getAttribute("title")).toBe(
      second!.report.interval.lo,
    );
    const transcriptRows = get(root, "transcript").querySelectorAll(
      "tbody tr",
    );
    expect(transcriptRows).toHaveLength(2);
  });

  it("keeps state and offers a retry when the network fails", async () => {
    const transport = new FakeTransport(elicitScript());
    const { app, root } = await startElicitation(transport);

    transport.failNext = true;
    get(root, "answer-player").click();
    await app.idle();

    const banner = get(root, "notice-banner");
    expect(banner.textContent).toContain("Network problem");
    // nothing moved: same session, same interval, same pending offer
    expect(get(root, "interval-lo").getAttribute("title")).toBe("0");
    expect(get(root, "interval-hi").getAttribute("title")).toBe("1");
    expect(get(root, "offer-price").getAttribute("title")).toBe("1/2");

    const [first, second] = walk.steps;
    transport.extend([
      {
        method: "POST",
        path: `${sessionPath}/answer`,
        body: { response: "player" },
        reply: first!.report,
      },
      { method: "GET", path: `${sessionPath}/query`, reply: second!.query },
    ]);
    get(root, "retry").click();
    await app.idle();
    absent(root, "notice-banner");
    expect(get(root, "interval-hi").getAttribute("title")).toBe("1/2");
  });

  it("surfaces a declined request without a retry button", async () => {
    const transport = new FakeTransport(elicitScript());
    const { app, root } = await startElicitation(transport);

    transport.extend([
      {
        method: "POST",
        path: `${sessionPath}/answer`,
        body: { response: "player" },
        status: errors.unknown_response.status,
        reply: { detail: errors.unknown_response.detail },
      },
    ]);
    get(root, "answer-player").click();
    await app.idle();

    const banner = get(root, "notice-banner");
    expect(banner.textContent).toContain(errors.unknown_response.detail);
    absent(root, "retry");
  });
});

describe("quiz screen", () => {
  function quizScript(fixture: QuizFixture): Exchange[] {
    const base = `/sessions/${fixture.create.id}`;
    return [
      { method: "POST", path: "/sessions", reply: fixture.create },
      { method: "POST", path: `${base}/preference`, reply: fixture.first },
      { method: "POST", path: `${base}/preference`, reply: fixture.second },
    ];
  }

  it("posts the rejected-below-chosen judgments and shows the banner", async () => {
    const transport = new FakeTransport(quizScript(allais));
    const { app, root } = makeApp(transport);

    get(root, "nav-quiz-allais").click();
    await app.idle();
    get(root, "quiz-option-0").click(); // option I
    await app.idle();
    get(root, "quiz-option-1").click(); // option IV
    await app.idle();

    const preferences = transport.sent.filter((r) =>
      r.path.endsWith("/preference"),
    );
    expect(preferences.map((r) => r.body)).toEqual([
      { left: "II", right: "I", rel: "<" },
      { left: "III", right: "IV", rel: "<" },
    ]);

    const banner = get(root, "verdict-banner");
    expect(banner.className).toContain("banner-violation");
    expect(banner.textContent).toContain("Sure-thing principle violated");
    expect(banner.textContent).toContain("P2: violated");
  });

  it("reports consistency when the feed stays empty", async () => {
    const transport = new FakeTransport(quizScript(allaisConsistent));
    const { app, root } = makeApp(transport);

    get(root, "nav-quiz-allais").click();
    await app.idle();
    get(root, "quiz-option-0").click(); // option I
    await app.idle();
    get(root, "quiz-option-0").click(); // option III
    await app.idle();

    const banner = get(root, "verdict-banner");
    expect(banner.className).toContain("banner-info");
    expect(banner.textContent).toContain("Consistent choices");
  });
});
