/**
 * Browser wiring: one debate, one forecaster, live re-render after every
 * action.  The page is parameterised through the query string:
 * ``?service=http://host:port&debate=ID&user=NAME``; without a debate id a
 * fresh debate is created from the question prompt.
 */

import { ApiClient, ApiError, Polarity, Vote } from './api.js';
import { renderCoherenceBadge, renderForecastPanel } from './panels.js';
import { buildTrees, renderForest } from './tree.js';
import { DebateView, ThresholdPreset } from './view.js';

function requireElement<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function showBanner(message: string | null): void {
  const banner = requireElement<HTMLDivElement>('banner');
  banner.textContent = message ?? '';
  banner.hidden = message === null;
}

async function guarded(action: () => Promise<void>): Promise<void> {
  try {
    await action();
    showBanner(null);
  } catch (error) {
    if (error instanceof ApiError) {
      // surface the violated invariant verbatim
      showBanner(String(typeof error.detail === 'string' ? error.detail : JSON.stringify(error.detail)));
    } else {
      showBanner('service unreachable; retry when it is back');
      throw error;
    }
  }
}

function render(view: DebateView): void {
  const state = view.state;
  if (state === null) {
    return;
  }
  requireElement<HTMLHeadingElement>('question').textContent = state.debate.question;

  const treeHost = requireElement<HTMLDivElement>('tree');
  treeHost.replaceChildren(renderForest(document, buildTrees(state.debate, view.user, state.qbaf)));
  for (const item of treeHost.querySelectorAll<HTMLElement>('li[data-arg-id]')) {
    item.addEventListener('click', (event) => {
      event.stopPropagation();
      requireElement<HTMLInputElement>('target').value = item.dataset.argId ?? '';
    });
  }

  requireElement<HTMLDivElement>('badge-host').replaceChildren(
    renderCoherenceBadge(document, state.coherence),
  );
  requireElement<HTMLDivElement>('forecast-host').replaceChildren(
    renderForecastPanel(document, state.forecast),
  );
  requireElement<HTMLSpanElement>('complexity').textContent =
    state.complexity === null ? '' : `shape: ${state.complexity.profile}`;
}

export async function start(): Promise<DebateView> {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get('service') ?? 'http://127.0.0.1:8000');
  const user = params.get('user') ?? 'anonymous';

  let debateId = params.get('debate');
  if (debateId === null) {
    const question = window.prompt('forecasting question?') ?? 'untitled question';
    const created = await api.createDebate(question);
    debateId = created.debate_id;
  }

  const view = new DebateView(api, debateId, user);
  await view.refresh();
  render(view);

  requireElement<HTMLFormElement>('add-form').addEventListener('submit', (event) => {
    event.preventDefault();
    const text = requireElement<HTMLInputElement>('arg-text').value;
    const target = requireElement<HTMLInputElement>('target').value || 'f';
    const polarity = requireElement<HTMLSelectElement>('polarity').value as Polarity;
    void guarded(async () => {
      await view.addArgument(text, target, polarity);
      render(view);
    });
  });

  for (const vote of ['+', '-', '?'] as Vote[]) {
    requireElement<HTMLButtonElement>(`vote-${vote === '+' ? 'up' : vote === '-' ? 'down' : 'unsure'}`)
      .addEventListener('click', () => {
        const target = requireElement<HTMLInputElement>('target').value;
        void guarded(async () => {
          await view.castVote(target, vote);
          render(view);
        });
      });
  }

  const slider = requireElement<HTMLInputElement>('prediction');
  // submit on release, not on every drag step
  slider.addEventListener('change', () => {
    void guarded(async () => {
      await view.submitPrediction('f', Number(slider.value) / 100);
      render(view);
    });
  });

  requireElement<HTMLSelectElement>('preset').addEventListener('change', (event) => {
    const preset = (event.target as HTMLSelectElement).value as ThresholdPreset;
    void guarded(async () => {
      await view.setPreset(preset);
      render(view);
    });
  });

  return view;
}
