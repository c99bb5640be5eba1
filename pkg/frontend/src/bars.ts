// Posterior bar charts.  Values are rendered exactly as the service sent
// them (fixed to 3 decimals for display) — never renormalized or clamped.

export function formatProb(p: number): string {
  return p.toFixed(3);
}

export function renderBars(
  root: HTMLElement,
  labels: string[],
  probs: number[],
  variant: "l0" | "l1",
): void {
  root.innerHTML = "";
  probs.forEach((p, i) => {
    const row = document.createElement("div");
    row.className = "bar-row";

    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = labels[i];

    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = `bar-fill bar-${variant}`;
    fill.style.width = `${(p * 100).toFixed(1)}%`;
    track.appendChild(fill);

    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = formatProb(p);

    row.append(label, track, value);
    root.appendChild(row);
  });
}
