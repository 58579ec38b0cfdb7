import init, { eval_expression, classify_algebra, planewave_residuals } from "./pkg/clifspin_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(id, f) {
  const out = $(id);
  try {
    out.textContent = f();
    out.classList.remove("error");
  } catch (e) {
    out.textContent = String(e);
    out.classList.add("error");
  }
}

await init();

$("ev-run").onclick = () => show("ev-out", () => eval_expression(num("ev-p"), num("ev-q"), $("ev-src").value));

$("cl-run").onclick = () =>
  show("cl-out", () => JSON.stringify(JSON.parse(classify_algebra(num("cl-p"), num("cl-q"))), null, 2));

$("pw-run").onclick = () =>
  show("pw-out", () => {
    const r = JSON.parse(
      planewave_residuals(num("pw-m"), num("pw-px"), num("pw-py"), num("pw-pz"), num("pw-f"), 8, 1n),
    );
    return `J = ${r.J}\nsigma = ${r.sigma}, omega = ${r.omega}\nmax residual = ${r.max_residual}\n\n${r.csv}`;
  });

for (const id of ["ev-run", "cl-run", "pw-run"]) $(id).click();
