import init, { random_figure, verify_scenario, worked_example_transcript } from "./pkg/butterfly_wasm.js";

const $ = (id) => document.getElementById(id);

function show(result) {
  $("figure").innerHTML = result.svg ?? `<p>${result.figure_error ?? "no figure"}</p>`;
  $("status").textContent = result.status;
  $("status").className = result.status;
  $("report").textContent = result.report
    .map((line) => JSON.stringify(JSON.parse(line), null, 2))
    .join("\n");
}

function draw() {
  try {
    const result = JSON.parse(random_figure($("kind").value, BigInt($("seed").value || 0)));
    $("scenario").value = result.scenario;
    show(result);
  } catch (e) {
    $("figure").textContent = String(e);
  }
}

await init();
$("draw").onclick = draw;
$("verify").onclick = () => show(JSON.parse(verify_scenario($("scenario").value)));
$("demo").onclick = () => {
  try {
    $("demo-out").textContent = worked_example_transcript();
  } catch (e) {
    $("demo-out").textContent = String(e);
  }
};
draw();
