/**
 * Coherence badge and group forecast panel.
 *
 * Both are pure renderers over documents fetched from the service; the
 * evidence shown next to the badge (sigma vs xi1, p vs xi2) comes straight
 * from the verdicts.
 */

import { CoherenceDoc, ForecastDoc } from './api.js';

function fmt(value: number | null): string {
  return value === null ? '-' : value.toFixed(3);
}

export function renderCoherenceBadge(doc: Document, coherence: CoherenceDoc | null): HTMLElement {
  const badge = doc.createElement('div');
  badge.classList.add('coherence-badge');
  if (coherence === null) {
    badge.classList.add('badge-unknown');
    badge.textContent = 'no verdict yet';
    return badge;
  }
  badge.classList.add(coherence.forecaster_coherent ? 'badge-coherent' : 'badge-incoherent');
  const title = doc.createElement('strong');
  title.textContent = coherence.forecaster_coherent ? 'coherent' : 'incoherent';
  badge.appendChild(title);

  const evidence = doc.createElement('ul');
  evidence.classList.add('evidence');
  for (const verdict of coherence.verdicts) {
    const line = doc.createElement('li');
    line.dataset.argument = verdict.argument;
    line.textContent =
      `${verdict.argument}: σ=${fmt(verdict.sigma)} p=${fmt(verdict.prediction)} ` +
      `(${verdict.branch.replace('_', ' ')})`;
    evidence.appendChild(line);
  }
  badge.appendChild(evidence);
  return badge;
}

export function renderForecastPanel(doc: Document, forecast: ForecastDoc): HTMLElement {
  const panel = doc.createElement('div');
  panel.classList.add('forecast-panel');
  for (const entry of forecast.forecasts) {
    const row = doc.createElement('div');
    row.classList.add('forecast-row');
    row.dataset.argument = entry.argument;
    const retained = `${entry.n_coherent}/${entry.n_raw}`;
    row.textContent =
      `${entry.argument}: raw ${fmt(entry.raw_mean)}, ` +
      `coherent ${fmt(entry.coherent_mean)} (retained ${retained})`;
    panel.appendChild(row);
  }
  return panel;
}
