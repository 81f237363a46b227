import init, { potentialReport, periodComparison, kernelGrid } from "./pkg/gpot_web.js";

const $ = (id) => document.getElementById(id);

function fail(el, e) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "err";
  p.textContent = String(e.message || e);
  el.appendChild(p);
}

function showPotential() {
  const out = $("pout");
  try {
    const r = JSON.parse(potentialReport($("pg").value, +$("c1").checked, +$("c2").checked, $("pe").value));
    let text = `W = ${r.potential}\n(${r.terms} terms)`;
    if (r.mutated) {
      const m = r.mutated;
      text += `\n\nafter mutation:\nW' = ${m.potential}\n`;
      text += `edges: ${m.graph.edges.map((e) => `${e.id}:${e.ends.join("-")}`).join("  ")}\n`;
      text += `mu  = ${m.mu}\nnu  = ${m.nu}\nmu' = ${m.mu_prime}\nnu' = ${m.nu_prime}\n${m.substitution}`;
    }
    out.textContent = text;
  } catch (e) {
    fail(out, e);
  }
}

function showPeriods() {
  const out = $("tout");
  try {
    const rows = JSON.parse(periodComparison(+$("tg").value, +$("to").value));
    const t = document.createElement("table");
    const head = t.insertRow();
    head.insertCell().textContent = "k";
    for (const r of rows) {
      const th = document.createElement("th");
      th.colSpan = 2;
      th.textContent = `${r.class} ${r.agree ? "agree" : "DIFFER"}`;
      head.appendChild(th);
    }
    for (let k = 0; k < rows[0].brute.length; k++) {
      const tr = t.insertRow();
      tr.insertCell().textContent = k;
      for (const r of rows) {
        for (const v of [r.brute[k], r.tqft[k]]) {
          const td = tr.insertCell();
          td.textContent = v;
          if (r.brute[k] !== r.tqft[k]) td.className = "bad";
        }
      }
    }
    out.innerHTML = "<p>each class: brute force, then trace formula</p>";
    out.appendChild(t);
  } catch (e) {
    fail(out, e);
  }
}

function showKernel() {
  const order = +$("ko").value;
  const kk = $("kk");
  kk.max = order;
  if (+kk.value > order) kk.value = order;
  $("kov").textContent = order;
  $("kkv").textContent = kk.value;
  try {
    const { grid } = JSON.parse(kernelGrid(order, +kk.value));
    const n = grid.length;
    const max = Math.max(...grid.flat().map(Math.abs)) || 1;
    const c = $("kc");
    const ctx = c.getContext("2d");
    const cell = c.width / n;
    ctx.clearRect(0, 0, c.width, c.height);
    grid.forEach((row, i) =>
      row.forEach((v, j) => {
        const s = Math.round(255 * (1 - Math.sqrt(Math.abs(v) / max)));
        ctx.fillStyle = `rgb(${s},${s},255)`;
        ctx.fillRect(j * cell, i * cell, cell, cell);
      }),
    );
    const nonzero = grid.flat().filter((v) => v !== 0).length;
    $("kinfo").textContent = `${n}x${n} grid, i and j from -${order} to ${order}; ${nonzero} nonzero, max ${max}`;
  } catch (e) {
    fail($("kinfo"), e);
  }
}

await init();
$("pgo").onclick = showPotential;
$("tgo").onclick = showPeriods;
$("ko").oninput = showKernel;
$("kk").oninput = showKernel;
showPotential();
showKernel();
