// Teaching app: rule picker, teach loop, live dual posteriors, suggestions.
//
// The UI is stateless beyond the session id (kept in the URL hash): every
// render is driven by service responses, and a page reload reproduces the
// identical view from GET /sessions/{id}.  No model math happens client-side.

import { ApiError, SessionState, Suggestion, TeachClient } from "./api.js";
import { renderBars } from "./bars.js";
import { renderHistory } from "./history.js";
import { renderSuggestions } from "./suggestions.js";

export interface Rule {
  id: string;
  pattern: string;
  description: string;
}

// The four built-in rules with their teacher-facing descriptions.
export const RULES: Rule[] = [
  {
    id: "3a",
    pattern: "^a{3,}$",
    description:
      "Only lowercase a's (no other characters), and at least 3 of them",
  },
  {
    id: "zip-code",
    pattern: "^\\d{5}$",
    description: "Exactly 5 characters long and contains only digits 0-9",
  },
  {
    id: "suffix-s",
    pattern: "^.*s$",
    description: "The string must end in s",
  },
  {
    id: "bracketed",
    pattern: "^\\[.*\\]$",
    description: "The string must begin with [ and end with ]",
  },
];

export interface AppConfig {
  suggestionCount: number;
}

export class App {
  config: AppConfig;
  private inFlight = false;

  constructor(
    public root: HTMLElement,
    public client: TeachClient,
    config?: Partial<AppConfig>,
  ) {
    this.config = { suggestionCount: 5, ...config };
  }

  async boot(): Promise<void> {
    const sessionId = sessionIdFromHash();
    if (sessionId !== null) {
      try {
        const state = await this.client.getState(sessionId);
        await this.renderSession(state);
        return;
      } catch {
        setSessionHash(null); // stale session; fall through to the picker
      }
    }
    this.renderStartScreen();
  }

  renderStartScreen(error?: string): void {
    this.root.innerHTML = `
      <section class="start">
        <h1>Teach a rule by example</h1>
        <p>Pick a rule, then teach it to the machine with positive strings
           that match it or negative strings that don't. Two learners watch:
           one takes your examples at face value, the other assumes you chose
           them helpfully.</p>
        ${error ? `<p class="banner banner-error">${escapeHtml(error)}</p>` : ""}
        <ul class="rule-list"></ul>
        <form class="custom-form">
          <h2>... or a custom space</h2>
          <input name="target" placeholder="target, e.g. ^ab*$" />
          <input name="distractors" placeholder="distractors, comma-separated" />
          <button type="submit">Start custom session</button>
          <p class="inline-error" hidden></p>
        </form>
      </section>`;
    const list = this.root.querySelector(".rule-list")!;
    for (const rule of RULES) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.className = "rule-pick";
      button.dataset.ruleId = rule.id;
      button.innerHTML =
        `<strong>${rule.id}</strong> <code>${escapeHtml(rule.pattern)}</code>` +
        `<span class="rule-description">${escapeHtml(rule.description)}</span>`;
      button.addEventListener("click", () => void this.startBuiltin(rule));
      item.appendChild(button);
      list.appendChild(item);
    }
    const form = this.root.querySelector<HTMLFormElement>(".custom-form")!;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.startCustom(form);
    });
  }

  async startBuiltin(rule: Rule): Promise<void> {
    try {
      // Declare the rule's own target so the suggestion panel works.
      const created = await this.client.createSession({
        rule_id: rule.id,
        target: rule.pattern,
      });
      setSessionHash(created.session_id);
      await this.renderSession(await this.client.getState(created.session_id));
    } catch (err) {
      this.renderStartScreen(describeError(err));
    }
  }

  async startCustom(form: HTMLFormElement): Promise<void> {
    const target = (form.elements.namedItem("target") as HTMLInputElement).value;
    const distractors = (
      form.elements.namedItem("distractors") as HTMLInputElement
    ).value
      .split(",")
      .map((s) => s.trim())
      .filter((s) => s.length > 0);
    const errorBox = form.querySelector<HTMLElement>(".inline-error")!;
    try {
      const created = await this.client.createSession({
        custom_space: { name: "custom", target, distractors },
        target,
      });
      setSessionHash(created.session_id);
      await this.renderSession(await this.client.getState(created.session_id));
    } catch (err) {
      errorBox.hidden = false;
      errorBox.textContent = describeError(err);
    }
  }

  async renderSession(state: SessionState): Promise<void> {
    const rule = RULES.find((r) => r.id === state.rule_id);
    this.root.innerHTML = `
      <section class="session">
        <header>
          <h1>${escapeHtml(state.rule_id)}</h1>
          <p class="rule-description">${rule ? escapeHtml(rule.description) : "custom rule space"}</p>
          <p class="session-meta">session <code>${state.session_id}</code>
             &middot; alpha ${state.params.alpha} &middot; beta ${state.params.beta}
             &middot; eta ${state.params.eta}</p>
        </header>
        <p class="banner banner-fallback" hidden>
          The helpful-teacher model cannot explain this corpus
          (every hypothesis rejects it), so the pedagogical learner fell
          back to the literal one.</p>
        <div class="charts">
          <figure>
            <figcaption>Literal learner L0</figcaption>
            <div class="bars bars-l0"></div>
          </figure>
          <figure>
            <figcaption>Pedagogical learner L1</figcaption>
            <div class="bars bars-l1"></div>
          </figure>
        </div>
        <form class="teach-form">
          <input name="text" placeholder="example string" autocomplete="off" />
          <label class="polarity-toggle">
            <input type="checkbox" name="positive" checked />
            <span>positive</span>
          </label>
          <button type="submit" disabled>Add example</button>
          <p class="inline-error" hidden></p>
        </form>
        <div class="columns">
          <section>
            <h2>Examples so far</h2>
            <ol class="history"></ol>
          </section>
          <aside class="suggestions-panel">
            <h2>Suggested next examples</h2>
            <div class="suggestions"></div>
          </aside>
        </div>
        <p><a href="#" class="leave">Teach a different rule</a></p>
      </section>`;

    this.updateView(state);

    const form = this.root.querySelector<HTMLFormElement>(".teach-form")!;
    const text = form.elements.namedItem("text") as HTMLInputElement;
    const button = form.querySelector("button")!;
    text.addEventListener("input", () => {
      button.disabled = text.value.length === 0 || this.inFlight;
    });
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitExample(state.session_id, form);
    });
    this.root.querySelector(".leave")!.addEventListener("click", (event) => {
      event.preventDefault();
      setSessionHash(null);
      this.renderStartScreen();
    });
    await this.refreshSuggestions(state);
  }

  updateView(state: SessionState): void {
    renderBars(
      this.root.querySelector(".bars-l0")!,
      state.hypotheses,
      state.l0,
      "l0",
    );
    renderBars(
      this.root.querySelector(".bars-l1")!,
      state.hypotheses,
      state.l1,
      "l1",
    );
    renderHistory(
      this.root.querySelector(".history")!,
      state.examples,
      state.clusters,
    );
    const banner = this.root.querySelector<HTMLElement>(".banner-fallback")!;
    banner.hidden = !state.fallback;
  }

  async submitExample(sessionId: string, form: HTMLFormElement): Promise<void> {
    if (this.inFlight) {
      return;
    }
    const text = form.elements.namedItem("text") as HTMLInputElement;
    const positive = form.elements.namedItem("positive") as HTMLInputElement;
    const button = form.querySelector("button")!;
    const errorBox = form.querySelector<HTMLElement>(".inline-error")!;
    this.inFlight = true;
    button.disabled = true;
    try {
      await this.client.addExample(
        sessionId,
        text.value,
        positive.checked ? "pos" : "neg",
      );
      errorBox.hidden = true;
      text.value = "";
      const state = await this.client.getState(sessionId);
      this.updateView(state);
      await this.refreshSuggestions(state);
    } catch (err) {
      errorBox.hidden = false;
      errorBox.textContent = describeError(err);
    } finally {
      this.inFlight = false;
      button.disabled = text.value.length === 0;
    }
  }

  async refreshSuggestions(state: SessionState): Promise<void> {
    const panel = this.root.querySelector<HTMLElement>(".suggestions-panel")!;
    const box = this.root.querySelector<HTMLElement>(".suggestions")!;
    if (this.config.suggestionCount <= 0) {
      panel.hidden = true;
      return;
    }
    let suggestions: Suggestion[];
    try {
      const body = await this.client.suggest(
        state.session_id,
        this.config.suggestionCount,
      );
      suggestions = body.suggestions;
    } catch (err) {
      if (err instanceof ApiError && err.code === "NoTargetDeclared") {
        box.innerHTML =
          '<p class="note">No teaching target declared for this session, ' +
          "so there is nothing to suggest.</p>";
        return;
      }
      box.innerHTML = `<p class="note">${escapeHtml(describeError(err))}</p>`;
      return;
    }
    renderSuggestions(box, suggestions, (s) => {
      // Clicking fills the input; the human decides whether to submit.
      const text = this.root.querySelector<HTMLInputElement>(
        '.teach-form input[name="text"]',
      )!;
      const positive = this.root.querySelector<HTMLInputElement>(
        '.teach-form input[name="positive"]',
      )!;
      text.value = s.text;
      positive.checked = s.label === "pos";
      text.dispatchEvent(new Event("input"));
    });
  }
}

export function sessionIdFromHash(): string | null {
  const match = /session=([A-Za-z0-9_-]+)/.exec(window.location.hash);
  return match ? match[1] : null;
}

export function setSessionHash(sessionId: string | null): void {
  window.location.hash = sessionId === null ? "" : `session=${sessionId}`;
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    return err.status === 0
      ? "Service unreachable — is `regexteach serve` running? Retry when it is."
      : `${err.code}: ${err.message}`;
  }
  return String(err);
}

function escapeHtml(text: string): string {
  const div = document.createElement("div");
  div.textContent = text;
  return div.innerHTML;
}
