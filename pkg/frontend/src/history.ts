// Example history with polarity, consistency badges, and cluster colors.

import { ExampleEcho } from "./api.js";

const CLUSTER_HUES = [205, 25, 130, 70, 290, 170, 330, 45];

export function clusterColor(index: number): string {
  return `hsl(${CLUSTER_HUES[index % CLUSTER_HUES.length]}, 65%, 80%)`;
}

export function renderHistory(
  root: HTMLElement,
  examples: ExampleEcho[],
  clusters: number[][],
): void {
  root.innerHTML = "";
  const clusterOf = new Map<number, number>();
  clusters.forEach((members, k) => {
    members.forEach((position) => clusterOf.set(position, k));
  });
  examples.forEach((example) => {
    const item = document.createElement("li");
    item.className = "history-item";
    const cluster = clusterOf.get(example.position);
    if (cluster !== undefined) {
      item.style.borderLeft = `6px solid ${clusterColor(cluster)}`;
    }

    const text = document.createElement("code");
    text.className = "history-text";
    text.textContent = example.text === "" ? "(empty string)" : example.text;

    const polarity = document.createElement("span");
    polarity.className = `polarity polarity-${example.label}`;
    polarity.textContent = example.label === "pos" ? "+" : "−";

    item.append(polarity, text);
    if (example.consistent_with_target === false) {
      const badge = document.createElement("span");
      badge.className = "badge-inconsistent";
      badge.textContent = "inconsistent with target";
      item.appendChild(badge);
    }
    root.appendChild(item);
  });
}
