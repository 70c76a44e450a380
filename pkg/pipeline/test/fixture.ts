/**
 * Builders for a miniature dataset cache shaped exactly like the real one:
 * gzipped graph tables, a title/abstract dump, and per-node cached parses.
 */

import * as fs from 'fs';
import * as path from 'path';
import * as zlib from 'zlib';

export const FIXTURE_NODES = 120;
export const FIXTURE_LABELS = 5;

export function nodeLabel(i: number): number {
  return i % FIXTURE_LABELS;
}

export function nodeEdges(i: number): number[] {
  const targets: number[] = [];
  if (i >= 5) targets.push(i - 5); // same label: labels cycle mod 5
  if (i >= 1) targets.push(i - 1);
  if (i >= 3) targets.push(i - 3);
  return targets;
}

export function nodeWords(i: number): string[] {
  const y = nodeLabel(i);
  return [`v${y}_${i % 3}`, `w${y}_${i % 6}`, `w${y}_${(i + 1) % 6}`, `w${y}_${(i + 3) % 6}`];
}

/** Two short sentences per node, as the external parser would emit them. */
export function nodeConllu(i: number): string {
  const [verb, a, b, c] = nodeWords(i);
  const sentence = (v: string, s: string, o: string) =>
    [
      `1\t${s}\t${s}\tNOUN\tNN\t_\t2\tnsubj\t_\t_`,
      `2\t${v}\t${v}\tVERB\tVB\t_\t0\troot\t_\t_`,
      `3\t${o}\t${o}\tNOUN\tNN\t_\t2\tobj\t_\t_`,
      `4\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_`,
    ].join('\n');
  return `${sentence(verb, a, b)}\n\n${sentence(verb, a, c)}\n`;
}

function gz(dest: string, text: string): void {
  fs.mkdirSync(path.dirname(dest), { recursive: true });
  fs.writeFileSync(dest, zlib.gzipSync(Buffer.from(text, 'utf-8')));
}

export function buildFixtureCache(cacheDir: string, nodes: number = FIXTURE_NODES): void {
  const labels: string[] = [];
  const edges: string[] = [];
  const mapping = ['node idx,paper id'];
  const titleabs: string[] = [];
  const train: string[] = [];
  const valid: string[] = [];
  const test: string[] = [];
  for (let i = 0; i < nodes; i += 1) {
    labels.push(String(nodeLabel(i)));
    for (const dst of nodeEdges(i)) {
      edges.push(`${i},${dst}`);
    }
    mapping.push(`${i},P${i}`);
    const words = nodeWords(i);
    titleabs.push(`P${i}\tOn ${words[1]} and ${words[2]}\tWe study ${words.join(' ')}.`);
    const frac = i / nodes;
    (frac < 0.6 ? train : frac < 0.8 ? valid : test).push(String(i));
    fs.mkdirSync(path.join(cacheDir, 'parses'), { recursive: true });
    fs.writeFileSync(path.join(cacheDir, 'parses', `${i}.conllu`), nodeConllu(i));
  }
  gz(path.join(cacheDir, 'raw/node-label.csv.gz'), labels.join('\n') + '\n');
  gz(path.join(cacheDir, 'raw/edge.csv.gz'), edges.join('\n') + '\n');
  gz(path.join(cacheDir, 'raw/num-node-list.csv.gz'), `${nodes}\n`);
  gz(path.join(cacheDir, 'split/time/train.csv.gz'), train.join('\n') + '\n');
  gz(path.join(cacheDir, 'split/time/valid.csv.gz'), valid.join('\n') + '\n');
  gz(path.join(cacheDir, 'split/time/test.csv.gz'), test.join('\n') + '\n');
  gz(path.join(cacheDir, 'mapping/nodeidx2paperid.csv.gz'), mapping.join('\n') + '\n');
  fs.writeFileSync(path.join(cacheDir, 'titleabs.tsv'), titleabs.join('\n') + '\n');
}
