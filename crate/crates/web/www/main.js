import init, { split, profile, random_bundle } from "./pkg/bgsplit_web.js";

const $ = (id) => document.getElementById(id);

function escape(s) {
  return s.replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);
}

function showError(el, msg) {
  el.innerHTML = `<p class="error">${escape(msg)}</p>`;
}

function fmtType(t) {
  return "(" + t.join(", ") + ")";
}

function runSplit() {
  const out = $("split-out");
  const r = JSON.parse(split($("bundle").value));
  if (r.error) return showError(out, r.error);
  out.innerHTML =
    `<p>type ${fmtType(r.type)}, rank ${r.rank}, degree ${r.deg}, ` +
    `h⁰ = ${r.h0}, h¹ = ${r.h1}, certificate ${r.verified ? "verified" : "REJECTED"}</p>` +
    `<pre>W·T·U = D\n\nW:\n${escape(r.factors.W)}\n\nU:\n${escape(r.factors.U)}\n\nD:\n${escape(r.factors.D)}</pre>`;
}

function drawProfile(points) {
  const c = $("plot");
  const g = c.getContext("2d");
  const pad = 40;
  g.clearRect(0, 0, c.width, c.height);
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => p[1]);
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  const y1 = Math.max(1, ...ys);
  const sx = (x) => pad + ((x - x0) / Math.max(1, x1 - x0)) * (c.width - 2 * pad);
  const sy = (y) => c.height - pad - (y / y1) * (c.height - 2 * pad);

  g.strokeStyle = "#999";
  g.fillStyle = "#444";
  g.font = "12px sans-serif";
  g.beginPath();
  g.moveTo(pad, sy(0));
  g.lineTo(c.width - pad, sy(0));
  g.moveTo(pad, pad);
  g.lineTo(pad, c.height - pad);
  g.stroke();
  for (const x of xs) g.fillText(String(x), sx(x) - 4, c.height - pad + 16);
  g.fillText(String(y1), 8, sy(y1) + 4);
  g.fillText("0", 8, sy(0) + 4);

  g.strokeStyle = "#1565c0";
  g.lineWidth = 2;
  g.beginPath();
  points.forEach(([x, y], i) => (i ? g.lineTo(sx(x), sy(y)) : g.moveTo(sx(x), sy(y))));
  g.stroke();
  g.fillStyle = "#1565c0";
  for (const [x, y] of points) {
    g.beginPath();
    g.arc(sx(x), sy(y), 3, 0, 2 * Math.PI);
    g.fill();
  }
  g.lineWidth = 1;
}

function runProfile() {
  const out = $("profile-out");
  const r = JSON.parse(profile($("bundle").value, Number($("pfrom").value), Number($("pto").value)));
  if (r.error) return showError(out, r.error);
  out.innerHTML = r.type
    ? `<p>type read off the profile: ${fmtType(r.type)}</p>`
    : `<p>range too narrow to read off the type; widen it until the curve starts at 0 and rises with slope ${r.rank}</p>`;
  drawProfile(r.points);
}

function runRandom() {
  const r = JSON.parse(random_bundle($("rtype").value, Number($("rgauge").value), Number($("rseed").value)));
  if (r.error) return showError($("split-out"), r.error);
  $("bundle").value = r.bundle;
  runSplit();
  runProfile();
}

await init();
$("split").onclick = runSplit;
$("profile").onclick = runProfile;
$("random").onclick = runRandom;
runSplit();
runProfile();
