// Wizard shell: step navigation gated by the workflow store, content swapped per step.

import type { AppContext } from "./context.js";
import type { StepId } from "./state.js";
import { renderStep1 } from "./steps/step1_upload.js";
import { renderStep2 } from "./steps/step2_inspect.js";
import { renderStep3 } from "./steps/step3_build.js";
import { renderStep4 } from "./steps/step4_isochrone.js";
import { renderStep5 } from "./steps/step5_profile.js";

const STEPS: { id: StepId; title: string; render: (c: HTMLElement, ctx: AppContext) => void }[] = [
  { id: 1, title: "Load feed", render: renderStep1 },
  { id: 2, title: "Inspect", render: renderStep2 },
  { id: 3, title: "Build network", render: renderStep3 },
  { id: 4, title: "Isochrones", render: renderStep4 },
  { id: 5, title: "OD profile", render: renderStep5 },
];

export function renderApp(root: HTMLElement, ctx: AppContext): void {
  const shell = document.createElement("div");
  shell.className = "app-shell";
  const nav = document.createElement("nav");
  nav.className = "step-nav";
  const content = document.createElement("main");
  content.className = "step-content";
  shell.append(nav, content);
  root.replaceChildren(shell);

  const sync = () => {
    const state = ctx.store.get();
    nav.replaceChildren();
    for (const step of STEPS) {
      const btn = document.createElement("button");
      btn.textContent = `${step.id}. ${step.title}`;
      btn.className = "nav-step" + (state.step === step.id ? " active" : "");
      btn.dataset.step = String(step.id);
      btn.disabled = !ctx.store.stepUnlocked(step.id);
      btn.addEventListener("click", () => ctx.store.goto(step.id));
      nav.appendChild(btn);
    }
    content.replaceChildren();
    const active = STEPS.find((s) => s.id === state.step)!;
    active.render(content, ctx);
  };

  sync();
  ctx.store.subscribe(sync);
}
