/**
 * Debate tree rendering.
 *
 * The graph is drawn as a tree rooted at the forecasting argument, following
 * the usual visual conventions: the forecasting node is cyan, supports are
 * solid green edges, attacks are dashed red edges, and the forecaster's own
 * votes show as thumb icons next to each argument.
 */

import { DebateDoc, Polarity, QbafDoc, Vote } from './api.js';

export interface TreeNode {
  id: string;
  text: string;
  forecasting: boolean;
  /** polarity of the edge from this node to its parent; null at the root */
  polarity: Polarity | null;
  strength: number | null;
  vote: Vote | null;
  children: TreeNode[];
}

const VOTE_ICONS: Record<Vote, string> = { '+': '\u{1F44D}', '-': '\u{1F44E}', '?': '❓' };

/** Arrange the debate's arguments into trees, one per forecasting argument. */
export function buildTrees(debate: DebateDoc, user: string, qbaf?: QbafDoc | null): TreeNode[] {
  const strengths = new Map<string, number>();
  for (const arg of qbaf?.arguments ?? []) {
    strengths.set(arg.id, arg.strength);
  }
  const votes = new Map<string, Vote>();
  for (const vote of debate.votes) {
    if (vote.user === user) {
      votes.set(vote.arg, vote.vote);
    }
  }
  const childEdges = new Map<string, { src: string; polarity: Polarity }[]>();
  for (const edge of debate.edges) {
    const entry = childEdges.get(edge.dst) ?? [];
    entry.push({ src: edge.src, polarity: edge.polarity });
    childEdges.set(edge.dst, entry);
  }
  const texts = new Map(debate.arguments.map((a) => [a.id, a.text]));

  const build = (id: string, polarity: Polarity | null, forecasting: boolean): TreeNode => ({
    id,
    text: texts.get(id) ?? '',
    forecasting,
    polarity,
    strength: strengths.get(id) ?? null,
    vote: votes.get(id) ?? null,
    children: (childEdges.get(id) ?? [])
      .slice()
      .sort((a, b) => a.src.localeCompare(b.src))
      .map((edge) => build(edge.src, edge.polarity, false)),
  });

  return debate.arguments
    .filter((a) => a.kind === 'forecasting')
    .sort((a, b) => a.id.localeCompare(b.id))
    .map((a) => build(a.id, null, true));
}

/** Render one tree into a nested list element. */
export function renderTree(doc: Document, node: TreeNode): HTMLElement {
  const item = doc.createElement('li');
  item.dataset.argId = node.id;
  if (node.polarity !== null) {
    item.classList.add(node.polarity === 'attack' ? 'edge-attack' : 'edge-support');
  }

  const label = doc.createElement('span');
  label.classList.add('node', node.forecasting ? 'node-forecasting' : 'node-regular');
  label.textContent = node.text || node.id;
  item.appendChild(label);

  if (node.strength !== null) {
    const strength = doc.createElement('span');
    strength.classList.add('strength');
    strength.textContent = ` σ=${node.strength.toFixed(3)}`;
    item.appendChild(strength);
  }
  if (node.vote !== null) {
    const icon = doc.createElement('span');
    icon.classList.add('vote-icon');
    icon.dataset.vote = node.vote;
    icon.textContent = VOTE_ICONS[node.vote];
    item.appendChild(icon);
  }

  if (node.children.length > 0) {
    const list = doc.createElement('ul');
    for (const child of node.children) {
      list.appendChild(renderTree(doc, child));
    }
    item.appendChild(list);
  }
  return item;
}

export function renderForest(doc: Document, trees: TreeNode[]): HTMLElement {
  const root = doc.createElement('ul');
  root.classList.add('debate-tree');
  for (const tree of trees) {
    root.appendChild(renderTree(doc, tree));
  }
  return root;
}
