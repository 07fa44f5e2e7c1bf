import init, { render_object, analyze_morphism, compose } from "./pkg/weil_demo.js";

const NS = "http://www.w3.org/2000/svg";
const COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];
const $ = (id) => document.getElementById(id);

function el(name, attrs, text) {
  const e = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

function positions(n, size) {
  const c = size / 2, r = n === 1 ? 0 : size / 2 - 40;
  return Array.from({ length: n }, (_, i) => {
    const a = -Math.PI / 2 + (2 * Math.PI * i) / n;
    return [c + r * Math.cos(a), c + r * Math.sin(a)];
  });
}

// Vertices of the graph, its edges, and optionally one translucent band per circle.
function draw(svg, graph, circles = [], prefix = "x") {
  svg.replaceChildren();
  const size = +svg.getAttribute("width");
  const pos = positions(graph.vertices, size);
  for (const [u, v] of graph.edges) {
    svg.append(el("line", { x1: pos[u][0], y1: pos[u][1], x2: pos[v][0], y2: pos[v][1], stroke: "#999", "stroke-width": 2 }));
  }
  circles.forEach((c, k) => {
    const color = COLORS[c.generator % COLORS.length];
    const pts = c.support.map((z) => pos[z].map((t) => t + 4 * (k % 3 - 1)));
    const d = pts.map((p, i) => (i ? "L" : "M") + p[0] + " " + p[1]).join(" ") + (pts.length > 2 ? " Z" : "");
    svg.append(el("path", { d, fill: "none", stroke: color, "stroke-opacity": 0.35, "stroke-width": 26, "stroke-linecap": "round", "stroke-linejoin": "round" }));
    const label = c.coeff > 1 ? `${c.coeff}·${prefix}${c.generator + 1}` : `${prefix}${c.generator + 1}`;
    svg.append(el("text", { x: pts[0][0] + 16, y: pts[0][1] - 16 - 12 * k, fill: color, "font-size": 13 }, label));
  });
  pos.forEach(([x, y], i) => {
    svg.append(el("circle", { cx: x, cy: y, r: 13, fill: "white", stroke: "#333" }));
    svg.append(el("text", { x, y: y + 4, "text-anchor": "middle", "font-size": 12 }, `y${i + 1}`));
  });
}

function show(out, svg, json, render) {
  const v = JSON.parse(json);
  out.classList.toggle("error", "error" in v);
  if ("error" in v) {
    out.textContent = v.error;
    svg.replaceChildren();
    return;
  }
  render(v);
}

function morphismText(v) {
  return `${v.text}\n${v.circles.length} circle(s), target ${v.target}`;
}

await init();

$("render").onclick = () => show($("object-out"), $("object-svg"), render_object($("object").value), (v) => {
  $("object-out").textContent = `${v.cotree}\n${v.algebra}`;
  draw($("object-svg"), v.graph);
});

$("analyze").onclick = () => show($("morphism-out"), $("morphism-svg"), analyze_morphism($("morphism").value, $("rig").value), (v) => {
  $("morphism-out").textContent = `${morphismText(v)}\n\n${v.decomposition}\n\n${v.size} nodes, evaluates back: ${v.roundTrip}`;
  draw($("morphism-svg"), v.targetGraph, v.circles);
});

$("compose").onclick = () => show($("compose-out"), $("compose-svg"), compose($("g").value, $("f").value, $("rig").value), (v) => {
  $("compose-out").textContent = morphismText(v);
  draw($("compose-svg"), v.targetGraph, v.circles);
});

for (const id of ["render", "analyze", "compose"]) $(id).click();
