/**
 * Distill the dependency parses of a document into one ground term.
 *
 * Content tokens (universal POS in the allowlist) become nodes keyed by
 * lowercased lemma; each node's arguments are the content tokens it governs.
 * Equal lemmas merge across sentences into a DAG: edges are added in
 * sentence and token order, and an edge that would close a cycle (or loop a
 * node onto itself) is skipped. Arguments and roots are ordered by the
 * lemma's first appearance in the text, the DAG roots become the arguments
 * of a top-level text_term, and shared subterms are duplicated when the DAG
 * unfolds into a tree. A document with no content tokens distills to the
 * atom `empty`.
 */

import { DependencyParse } from './conllu';
import { atom, compound, GroundTerm } from './terms';

export const DEFAULT_POS_ALLOWLIST = ['NOUN', 'PROPN', 'VERB', 'ADJ'];

interface DagNode {
  lemma: string;
  appearance: number; // rank of first kept occurrence
  children: Set<string>;
  parents: number;
}

export function distill(
  parses: DependencyParse[],
  posAllowlist: string[] = DEFAULT_POS_ALLOWLIST,
): GroundTerm {
  if (parses.length === 0) {
    throw new Error('distill needs at least one parsed sentence');
  }
  const allowed = new Set(posAllowlist);
  const nodes = new Map<string, DagNode>();

  const nodeFor = (lemma: string): DagNode => {
    let node = nodes.get(lemma);
    if (node === undefined) {
      node = { lemma, appearance: nodes.size, children: new Set(), parents: 0 };
      nodes.set(lemma, node);
    }
    return node;
  };

  const reaches = (from: string, target: string): boolean => {
    const stack = [from];
    const seen = new Set<string>();
    while (stack.length > 0) {
      const lemma = stack.pop()!;
      if (lemma === target) {
        return true;
      }
      if (seen.has(lemma)) {
        continue;
      }
      seen.add(lemma);
      const node = nodes.get(lemma);
      if (node !== undefined) {
        stack.push(...node.children);
      }
    }
    return false;
  };

  for (const sentence of parses) {
    const kept = sentence.filter((t) => allowed.has(t.upos));
    // Register nodes in token order so appearance ranks follow the text.
    for (const tok of kept) {
      nodeFor(tok.lemma.toLowerCase());
    }
    for (const tok of kept) {
      const head = tok.lemma.toLowerCase();
      for (const dep of kept) {
        if (dep.head !== tok.index) {
          continue;
        }
        const child = dep.lemma.toLowerCase();
        if (child === head || nodes.get(head)!.children.has(child)) {
          continue;
        }
        if (reaches(child, head)) {
          continue; // this edge would close a cycle
        }
        nodes.get(head)!.children.add(child);
        nodeFor(child).parents += 1;
      }
    }
  }

  if (nodes.size === 0) {
    return atom('empty');
  }
  assertAcyclic(nodes);

  const byAppearance = (a: string, b: string) =>
    nodes.get(a)!.appearance - nodes.get(b)!.appearance;

  const expand = (lemma: string): GroundTerm => {
    const node = nodes.get(lemma)!;
    if (node.children.size === 0) {
      return atom(lemma);
    }
    const args = [...node.children].sort(byAppearance).map(expand);
    return compound(lemma, args);
  };

  const roots = [...nodes.values()]
    .filter((n) => n.parents === 0)
    .sort((a, b) => a.appearance - b.appearance)
    .map((n) => expand(n.lemma));
  return compound('text_term', roots);
}

/** Kahn's algorithm over the merged graph; the edge rules should make this unreachable. */
function assertAcyclic(nodes: Map<string, DagNode>): void {
  const indegree = new Map<string, number>();
  for (const [lemma, node] of nodes) {
    indegree.set(lemma, node.parents);
  }
  const queue = [...indegree.entries()].filter(([, d]) => d === 0).map(([l]) => l);
  let visited = 0;
  while (queue.length > 0) {
    const lemma = queue.pop()!;
    visited += 1;
    for (const child of nodes.get(lemma)!.children) {
      const d = indegree.get(child)! - 1;
      indegree.set(child, d);
      if (d === 0) {
        queue.push(child);
      }
    }
  }
  if (visited !== nodes.size) {
    throw new Error('distilled graph contains a cycle; edge filtering failed');
  }
}
