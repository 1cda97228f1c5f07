import init, { wcheck, knot, chainHomology } from "./pkg/finloc_web.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  try {
    out.textContent = f();
    out.classList.remove("error");
  } catch (e) {
    out.textContent = String(e.message ?? e);
    out.classList.add("error");
  }
}

function updateW() {
  const v = $("w-slider").value;
  $("w-value").textContent = v;
  show($("w-out"), () => wcheck($("w-matrix").value, `t=${v}`, $("w-target").value, false));
}

function updateKnot() {
  show($("k-out"), () => knot($("k-pres").value, false));
}

function updateChain() {
  const map = `t=${$("c-value").value}`;
  show($("c-out"), () => chainHomology($("c-complex").value, map, $("c-target").value, $("c-localized").checked, false));
}

await init();
for (const id of ["w-matrix", "w-slider", "w-target"]) $(id).addEventListener("input", updateW);
$("k-pres").addEventListener("input", updateKnot);
$("k-preset").addEventListener("change", () => {
  $("k-pres").value = $("k-preset").value;
  updateKnot();
});
for (const id of ["c-complex", "c-value", "c-target", "c-localized"]) $(id).addEventListener("input", updateChain);
updateW();
updateKnot();
updateChain();
