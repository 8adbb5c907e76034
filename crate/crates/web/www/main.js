import init, { grading, graded_orbits, stalks } from "./pkg/gradedpar_web.js";

const $ = (id) => document.getElementById(id);

function el(tag, text, cls) {
  const e = document.createElement(tag);
  if (text !== undefined) e.textContent = text;
  if (cls) e.className = cls;
  return e;
}

function table(head, rows) {
  const t = el("table");
  const hr = t.insertRow();
  head.forEach((h) => hr.appendChild(el("th", h)));
  rows.forEach((r) => {
    const tr = t.insertRow();
    r.forEach((c) => (c instanceof Node ? tr.appendChild(c) : tr.appendChild(el("td", String(c)))));
  });
  return t;
}

function show(out, result, render) {
  out.replaceChildren();
  const v = JSON.parse(result);
  if (v.error) out.appendChild(el("p", v.error, "err"));
  else render(v, out);
}

function runGrading() {
  const degree = Number($("g-degree").value);
  show($("g-out"), grading($("g-cochar").value, degree), (v, out) => {
    const rows = v.weight_matrix.split(";").map((r) =>
      r.split(",").map((w) => el("td", w, Number(w) === degree ? "hit" : undefined)));
    out.appendChild(el("p", `g_${degree} has dimension ${v.dim}`));
    out.appendChild(table(rows.map((_, j) => `${j + 1}`), rows));
  });
}

function runOrbits() {
  show($("o-out"), graded_orbits($("o-cochar").value, Number($("o-degree").value)), (v, out) => {
    const fmt = (blocks) => blocks.map((b) => `{${b.join(",")}}`).join(" ");
    out.appendChild(table(["orbit", "dim", "Levi blocks"],
      v.orbits.map((o) => [o.label, o.dimension, fmt(o.levi_blocks)])));
  });
}

function runStalks() {
  show($("s-out"), stalks($("s-case").value, Number($("s-char").value)), (v, out) => {
    // reverse lexicographic on these labels is dominance order, [4] first
    const cols = Object.keys(v.columns).sort().reverse();
    const degs = new Set();
    cols.forEach((c) => Object.keys(v.columns[c]).forEach((d) => degs.add(Number(d))));
    const sorted = [...degs].sort((a, b) => b - a);
    out.appendChild(table(["deg", ...cols.map((c) => `O${c}`)],
      sorted.map((d) => [d, ...cols.map((c) => v.columns[c][d] ?? "")])));
    const bad = v.parity_violations;
    out.appendChild(el("p", bad.length ? `parity fails on ${bad.join(", ")}` : "parity holds", bad.length ? "err" : undefined));
  });
}

await init();
$("g-run").onclick = runGrading;
$("o-run").onclick = runOrbits;
$("s-run").onclick = runStalks;
runGrading();
