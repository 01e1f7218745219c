import init, { dof_grid, truncation_decay, mutual_information_curve } from "./pkg/stfdof_web.js";

const $ = (id) => document.getElementById(id);
const fmt = (x) => (Math.abs(x) >= 1e4 || (x !== 0 && Math.abs(x) < 1e-2) ? x.toExponential(3) : x.toFixed(3));

function bindSliders(ids, show, redraw) {
  for (const id of ids) {
    const input = $(id);
    const update = () => {
      $(id + "-out").textContent = show[id](Number(input.value));
      redraw();
    };
    input.addEventListener("input", update);
    $(id + "-out").textContent = show[id](Number(input.value));
  }
  redraw();
}

function guarded(errId, fn) {
  return () => {
    try {
      fn();
      $(errId).textContent = "";
    } catch (e) {
      $(errId).textContent = String(e.message ?? e);
    }
  };
}

// Viridis-like ramp, t in [0, 1].
function colour(t) {
  const stops = [[68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37]];
  const x = Math.min(Math.max(t, 0), 1) * (stops.length - 1);
  const i = Math.min(Math.floor(x), stops.length - 2);
  const f = x - i;
  return stops[i].map((a, k) => Math.round(a + (stops[i + 1][k] - a) * f));
}

const NR = 60;
const NW = 80;

function drawDof() {
  const f = 10 ** Number($("dof-f").value);
  const t = 10 ** Number($("dof-t").value);
  const r = Number($("dof-r").value);
  const w = f * 10 ** Number($("dof-w").value);
  const grid = dof_grid(f, t, r, w, NR, NW);
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of grid) {
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  const canvas = $("dof-canvas");
  const ctx = canvas.getContext("2d");
  const cw = canvas.width / NW;
  const ch = canvas.height / NR;
  for (let i = 0; i < NR; i++) {
    for (let j = 0; j < NW; j++) {
      const [red, green, blue] = colour((grid[i * NW + j] - lo) / (hi - lo || 1));
      ctx.fillStyle = `rgb(${red},${green},${blue})`;
      ctx.fillRect(j * cw, canvas.height - (i + 1) * ch, Math.ceil(cw), Math.ceil(ch));
    }
  }
  $("dof-range").textContent = `log10 count from ${lo.toFixed(2)} to ${hi.toFixed(2)}; W up to ${fmt(w)} Hz.`;
}

function plotLines(canvas, series, xs) {
  const ctx = canvas.getContext("2d");
  const pad = 40;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const finite = series.flatMap((s) => s.values.filter(Number.isFinite));
  const lo = Math.floor(Math.min(...finite));
  const hi = Math.ceil(Math.max(...finite));
  const x0 = xs[0];
  const x1 = xs[xs.length - 1];
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (canvas.width - 2 * pad);
  const py = (y) => canvas.height - pad - ((y - lo) / (hi - lo || 1)) * (canvas.height - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  const step = Math.max(1, Math.ceil((hi - lo) / 8));
  for (let y = lo; y <= hi; y += step) {
    ctx.fillText(String(y), 4, py(y) + 4);
  }
  ctx.fillText(fmt(x0), pad, canvas.height - pad + 14);
  ctx.fillText(fmt(x1), canvas.width - pad - 20, canvas.height - pad + 14);

  for (const { values, colour: c } of series) {
    ctx.strokeStyle = c;
    ctx.lineWidth = 2;
    ctx.beginPath();
    let pen = false;
    values.forEach((v, i) => {
      if (!Number.isFinite(v)) {
        pen = false;
        return;
      }
      if (pen) ctx.lineTo(px(xs[i]), py(v));
      else ctx.moveTo(px(xs[i]), py(v));
      pen = true;
    });
    ctx.stroke();
  }
}

const STEPS = 15;

function drawTruncation() {
  const v = truncation_decay(Number($("tr-s").value), Number($("tr-t").value), Number($("tr-u").value), STEPS);
  const n = STEPS + 1;
  // Round-off floor keeps log10 finite.
  const log = (a) => Array.from(a, (x) => Math.log10(Math.max(x, 1e-17)));
  const xs = Array.from({ length: n }, (_, i) => i);
  plotLines($("tr-canvas"), [
    { values: log(v.subarray(0, n)), colour: "#1f77b4" },
    { values: log(v.subarray(n, 2 * n)), colour: "#d62728" },
    { values: Array.from(v.subarray(2 * n), (x) => (Number.isNaN(x) ? NaN : Math.log10(Math.max(x, 1e-300)))), colour: "#2ca02c" },
  ], xs);
}

const RHO_POINTS = 60;

function drawMi() {
  const r = Number($("mi-r").value);
  const w = 10 ** Number($("mi-w").value);
  const v = mutual_information_curve(r, 5e-4, 2.4e9, w, 1e-2, 1e4, RHO_POINTS);
  const col = (k) => Array.from({ length: RHO_POINTS }, (_, i) => Math.log10(v[4 * i + k]));
  plotLines($("mi-canvas"), [
    { values: col(1), colour: "#1f77b4" },
    { values: col(2), colour: "#d62728" },
    { values: col(3), colour: "#2ca02c" },
  ], col(0));
}

await init();

bindSliders(["dof-f", "dof-t", "dof-r", "dof-w"], {
  "dof-f": (x) => `${fmt(10 ** x)} Hz`,
  "dof-t": (x) => `${fmt(10 ** x)} s`,
  "dof-r": (x) => `${x} m`,
  "dof-w": (x) => `${fmt(10 ** x)} F`,
}, guarded("dof-err", drawDof));

bindSliders(["tr-s", "tr-t", "tr-u"], {
  "tr-s": (x) => x.toFixed(1),
  "tr-t": (x) => x.toFixed(1),
  "tr-u": (x) => x.toFixed(2),
}, guarded("tr-err", drawTruncation));

bindSliders(["mi-r", "mi-w"], {
  "mi-r": (x) => `${x} m`,
  "mi-w": (x) => `${fmt(10 ** x)} Hz`,
}, guarded("mi-err", drawMi));
