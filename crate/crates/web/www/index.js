import init, { alexander, twist, verify } from "./pkg/twistalex_web.js";

const $ = (id) => document.getElementById(id);

function show(id, text) {
  const out = $(id);
  const v = JSON.parse(text);
  out.classList.toggle("error", "error" in v);
  if ("error" in v) {
    out.textContent = v.error;
    return;
  }
  const lines = [];
  if (v.polynomials) {
    v.polynomials.forEach((p, k) => lines.push(`${k + 1}: ${p}`));
  }
  if (v.wada) lines.push(`W = (${v.wada.numerator}) / (${v.wada.denominator})`);
  if ("inversion_closed" in v) {
    lines.push(`inversion-closed: ${v.inversion_closed ?? "unsupported (coefficients not rational)"}`);
  }
  if ("nullity" in v) {
    lines.push(`field ${v.field}, alpha = ${v.alpha}`);
    lines.push(`nullity = ${v.nullity}, max_r = ${v.max_r}, agree = ${v.agree}`);
    v.basis.forEach((b, k) => lines.push(`v${k + 1} = (${b.join(", ")})`));
  }
  lines.push(`${v.knot.generators} generators: ${v.knot.relations.join(" ")}`);
  out.textContent = lines.join("\n");
}

await init();

$("alex-run").onclick = () => show("alex-out", alexander($("alex-knot").value));
$("twist-run").onclick = () =>
  show("twist-out", twist($("twist-knot").value, $("twist-c").value));
$("verify-run").onclick = () =>
  show("verify-out", verify($("verify-knot").value, $("verify-alpha").value, $("verify-inverse").checked));

for (const id of ["alex", "twist", "verify"]) $(`${id}-run`).click();
