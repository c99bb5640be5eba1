// Suggestion panel: ranked candidate examples with one-click adoption.

import { Suggestion } from "./api.js";

export function renderSuggestions(
  root: HTMLElement,
  suggestions: Suggestion[],
  onPick: (s: Suggestion) => void,
): void {
  root.innerHTML = "";
  if (suggestions.length === 0) {
    root.innerHTML = '<p class="note">No consistent candidates to suggest.</p>';
    return;
  }
  const list = document.createElement("ol");
  list.className = "suggestion-list";
  for (const suggestion of suggestions) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.type = "button";
    button.className = "suggestion";
    const shown = suggestion.text === "" ? "(empty string)" : suggestion.text;
    button.innerHTML =
      `<code>${escape(shown)}</code> ` +
      `<span class="polarity polarity-${suggestion.label}">` +
      `${suggestion.label === "pos" ? "+" : "−"}</span>`;
    button.title = `teacher weight ${suggestion.score.toExponential(3)}`;
    button.addEventListener("click", () => onPick(suggestion));
    item.appendChild(button);
    list.appendChild(item);
  }
  root.appendChild(list);
}

function escape(text: string): string {
  const div = document.createElement("div");
  div.textContent = text;
  return div.innerHTML;
}
