/**
 * End-to-end conversion: acquire the dataset, distill each node's text into
 * a ground term, and write the fact file the inference engine consumes.
 */

import * as fs from 'fs';
import * as path from 'path';

import { distill, DEFAULT_POS_ALLOWLIST } from './distill';
import { FactRecord, serializeRecord, Split } from './gff';
import { ensureRawData, readTables, readTexts, DEFAULT_DATASET_URL, DEFAULT_TEXT_URL } from './ogb';
import { parsesForNode, DEFAULT_PARSER_CMD } from './parser';
import { atom } from './terms';

export const NUM_CLASSES = 40;

export interface ConvertOptions {
  out: string;
  cacheDir: string;
  limit?: number;
  posAllowlist?: string[];
  parserCmd?: string;
  datasetUrl?: string;
  textUrl?: string;
  log?: (message: string) => void;
}

export interface ConvertResult {
  clauses: number;
  skippedEdges: number;
  emptyContent: number;
}

export async function fetchAndConvert(options: ConvertOptions): Promise<ConvertResult> {
  const log = options.log ?? (() => undefined);
  const cacheDir = options.cacheDir;
  const allowlist = options.posAllowlist ?? DEFAULT_POS_ALLOWLIST;
  const parserCmd = options.parserCmd ?? DEFAULT_PARSER_CMD;

  await ensureRawData(
    cacheDir,
    options.datasetUrl ?? DEFAULT_DATASET_URL,
    options.textUrl ?? DEFAULT_TEXT_URL,
  );
  const tables = readTables(cacheDir);
  const texts = readTexts(cacheDir);

  const total = tables.numNodes;
  const count = options.limit !== undefined ? Math.min(options.limit, total) : total;
  log(`converting ${count} of ${total} nodes`);

  const splitOf = new Map<number, Split>();
  for (const i of tables.splits.train) splitOf.set(i, 'tr');
  for (const i of tables.splits.valid) splitOf.set(i, 'va');
  for (const i of tables.splits.test) splitOf.set(i, 'te');

  // Outgoing citation targets per node; edges leaving the converted range
  // are dropped so the output is the induced subgraph on [0, count).
  const neighbors: number[][] = Array.from({ length: count }, () => []);
  let skippedEdges = 0;
  for (const [src, dst] of tables.edges) {
    if (src < count && dst < count) {
      neighbors[src].push(dst);
    } else {
      skippedEdges += 1;
    }
  }

  let emptyContent = 0;
  const out = fs.createWriteStream(options.out + '.part', { encoding: 'utf-8' });
  try {
    for (let id = 0; id < count; id += 1) {
      const split = splitOf.get(id);
      if (split === undefined) {
        throw new Error(`node ${id} appears in no split list`);
      }
      const label = tables.labels[id];
      if (!Number.isInteger(label) || label < 0 || label >= NUM_CLASSES) {
        throw new Error(`node ${id} has label ${label}, outside [0, ${NUM_CLASSES})`);
      }
      const text = texts.get(tables.paperIds[id]) ?? '';
      let content = atom('empty');
      if (text.trim() !== '') {
        const parses = parsesForNode(cacheDir, id, text, parserCmd);
        if (parses.length > 0) {
          content = distill(parses, allowlist);
        }
      }
      if (content.kind === 'atom' && content.name === 'empty') {
        emptyContent += 1;
      }
      const record: FactRecord = { id, split, label, content, neighbors: neighbors[id] };
      out.write(serializeRecord(record) + '\n');
      if ((id + 1) % 10000 === 0) {
        log(`  ${id + 1}/${count}`);
      }
    }
  } finally {
    await new Promise<void>((resolve, reject) =>
      out.close((err) => (err ? reject(err) : resolve())),
    );
  }
  fs.renameSync(options.out + '.part', options.out);
  log(`wrote ${count} clauses to ${options.out}`);
  return { clauses: count, skippedEdges, emptyContent };
}

export function cacheHasParses(cacheDir: string, count: number): boolean {
  for (let id = 0; id < count; id += 1) {
    if (!fs.existsSync(path.join(cacheDir, 'parses', `${id}.conllu`))) {
      return false;
    }
  }
  return true;
}
