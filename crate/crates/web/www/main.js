import init, { projection, boundary, fourier } from "./pkg/ktorus_web.js";

const $ = (id) => document.getElementById(id);

function show(id, text, isError = false) {
  const el = $(id);
  el.textContent = text;
  el.className = isError ? "err" : "";
}

// Values in [0, 1] mapped to a blue-white-red ramp.
function heatmap(canvas, values, n) {
  const off = new OffscreenCanvas(n, n);
  const ctx = off.getContext("2d");
  const img = ctx.createImageData(n, n);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const v = Math.min(1, Math.max(0, values[i * n + j]));
      // theta runs left to right, phi bottom to top
      const p = 4 * ((n - 1 - j) * n + i);
      img.data[p] = 255 * Math.min(1, 2 * v);
      img.data[p + 1] = 255 * (1 - Math.abs(2 * v - 1));
      img.data[p + 2] = 255 * Math.min(1, 2 - 2 * v);
      img.data[p + 3] = 255;
    }
  }
  ctx.putImageData(img, 0, 0);
  const c = canvas.getContext("2d");
  c.imageSmoothingEnabled = false;
  c.drawImage(off, 0, 0, canvas.width, canvas.height);
}

function plot(canvas, xs, series, yMin, yMax) {
  const c = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  c.clearRect(0, 0, w, h);
  c.strokeStyle = "#ccc";
  c.strokeRect(0, 0, w, h);
  const px = (x) => x * w;
  const py = (y) => h - ((y - yMin) / (yMax - yMin)) * h;
  for (const { ys, color } of series) {
    c.strokeStyle = color;
    c.beginPath();
    ys.forEach((y, k) => (k ? c.lineTo(px(xs[k]), py(y)) : c.moveTo(px(xs[k]), py(y))));
    c.stroke();
  }
}

function run(outId, f) {
  try {
    f();
  } catch (e) {
    show(outId, String(e), true);
  }
}

function onProjection() {
  run("p-out", () => {
    const n = Number($("p-n").value);
    const r = JSON.parse(projection($("p-src").value, n));
    heatmap($("p-11"), r.p11, n);
    heatmap($("p-12"), r.p12_abs, n);
    const c = r.chern;
    show("p-out", `Chern number ${c.chern}\nprojection defect ${c.max_projection_defect.toExponential(2)}\nmax plaquette phase ${c.max_plaquette_phase.toFixed(4)}\ndistance to integer ${c.distance_to_integer.toExponential(2)}`);
  });
}

function onBoundary() {
  run("b-out", () => {
    const n = Number($("b-n").value);
    const r = JSON.parse(boundary($("b-src").value, n));
    const xs = r.f.map((_, k) => k / n);
    plot($("b-plot"), xs, [{ ys: r.f, color: "#c33" }], -0.05, 1.05);
    const b = r.boundary;
    show("b-out", `boundary class ${b.boundary}\nwinding of exp(2 pi i f) ${b.winding_u}\ndet winding ${b.det_winding}\nsupport ${JSON.stringify(b.support)}\nmax jump ${b.max_jump.toExponential(2)}`);
  });
}

function onFourier() {
  run("f-out", () => {
    const r = JSON.parse(fourier(Number($("f-n").value), 512));
    plot($("f-plot"), r.theta, [
      { ys: r.target, color: "#999" },
      { ys: r.partial, color: "#33c" },
    ], -0.1, 1.1);
    const terms = r.term_norms.slice(0, 6).map((t) => t.toExponential(2)).join(", ");
    show("f-out", `N = ${r.N}\nl1 tail ${r.l1_tail.toExponential(4)}\nsup gap |S_2N - S_N| ${r.sup_gap.toExponential(4)}\nC1 gap ${r.c1_gap.toFixed(4)}\nterm norms k=1.. ${terms}`);
  });
}

await init();
show("status", "Ready.");
$("p-go").onclick = onProjection;
$("b-go").onclick = onBoundary;
$("f-go").onclick = onFourier;
onProjection();
onBoundary();
onFourier();
