/**
 * Acquisition and table access for the ogbn-arxiv distribution.
 *
 * Everything lands in a cache directory and reruns are strictly offline
 * once the cache is populated:
 *
 *   <cache>/raw/node-label.csv.gz       one label per node index
 *   <cache>/raw/edge.csv.gz             "src,dst" citation edges
 *   <cache>/raw/num-node-list.csv.gz    total node count
 *   <cache>/split/time/{train,valid,test}.csv.gz   node indices per split
 *   <cache>/mapping/nodeidx2paperid.csv.gz         header + "idx,paperid"
 *   <cache>/titleabs.tsv                paperid \t title \t abstract
 *   <cache>/parses/<id>.conllu          cached dependency parses
 *
 * Missing graph tables are restored by downloading the dataset zip (kept as
 * <cache>/arxiv.zip, so an interrupted run resumes from the archive);
 * missing text is restored from the title/abstract dump.
 */

import AdmZip from 'adm-zip';
import * as fs from 'fs';
import * as path from 'path';
import * as zlib from 'zlib';

export const DEFAULT_DATASET_URL = 'http://snap.stanford.edu/ogb/data/nodeproppred/arxiv.zip';
export const DEFAULT_TEXT_URL = 'https://snap.stanford.edu/ogb/data/misc/ogbn_arxiv/titleabs.tsv.gz';

const RAW_FILES = [
  'raw/node-label.csv.gz',
  'raw/edge.csv.gz',
  'raw/num-node-list.csv.gz',
  'split/time/train.csv.gz',
  'split/time/valid.csv.gz',
  'split/time/test.csv.gz',
  'mapping/nodeidx2paperid.csv.gz',
];

export interface ArxivTables {
  numNodes: number;
  labels: number[];
  edges: Array<[number, number]>;
  splits: { train: number[]; valid: number[]; test: number[] };
  paperIds: string[];
}

export class DownloadError extends Error {}

async function download(url: string, dest: string): Promise<void> {
  let response: Response;
  try {
    response = await fetch(url);
  } catch (err) {
    throw new DownloadError(
      `failed to download ${url}: ${(err as Error).message}. ` +
        'Check connectivity and retry; completed downloads are cached and will not be refetched.',
    );
  }
  if (!response.ok) {
    throw new DownloadError(
      `failed to download ${url}: HTTP ${response.status}. ` +
        'Retry later; completed downloads are cached and will not be refetched.',
    );
  }
  const body = Buffer.from(await response.arrayBuffer());
  fs.mkdirSync(path.dirname(dest), { recursive: true });
  fs.writeFileSync(dest + '.part', body);
  fs.renameSync(dest + '.part', dest);
}

/** Ensure the graph tables and text dump exist in the cache; download if not. */
export async function ensureRawData(
  cacheDir: string,
  datasetUrl: string = DEFAULT_DATASET_URL,
  textUrl: string = DEFAULT_TEXT_URL,
): Promise<void> {
  const missing = RAW_FILES.filter((rel) => !fs.existsSync(path.join(cacheDir, rel)));
  if (missing.length > 0) {
    const zipPath = path.join(cacheDir, 'arxiv.zip');
    if (!fs.existsSync(zipPath)) {
      await download(datasetUrl, zipPath);
    }
    extractDatasetZip(zipPath, cacheDir);
    const still = RAW_FILES.filter((rel) => !fs.existsSync(path.join(cacheDir, rel)));
    if (still.length > 0) {
      throw new DownloadError(`dataset archive is missing entries: ${still.join(', ')}`);
    }
  }
  const textPath = path.join(cacheDir, 'titleabs.tsv');
  if (!fs.existsSync(textPath)) {
    const gzPath = textPath + '.gz';
    if (!fs.existsSync(gzPath)) {
      await download(textUrl, gzPath);
    }
    fs.writeFileSync(textPath + '.part', zlib.gunzipSync(fs.readFileSync(gzPath)));
    fs.renameSync(textPath + '.part', textPath);
  }
}

/** Copy the needed archive entries into the cache, dropping the top-level dir. */
export function extractDatasetZip(zipPath: string, cacheDir: string): void {
  const zip = new AdmZip(zipPath);
  for (const entry of zip.getEntries()) {
    if (entry.isDirectory) {
      continue;
    }
    const rel = entry.entryName.split('/').slice(1).join('/');
    if (!RAW_FILES.includes(rel)) {
      continue;
    }
    const dest = path.join(cacheDir, rel);
    fs.mkdirSync(path.dirname(dest), { recursive: true });
    fs.writeFileSync(dest, entry.getData());
  }
}

function gzLines(cacheDir: string, rel: string): string[] {
  const raw = zlib.gunzipSync(fs.readFileSync(path.join(cacheDir, rel)));
  const text = raw.toString('utf-8');
  const lines = text.split('\n');
  while (lines.length > 0 && lines[lines.length - 1].trim() === '') {
    lines.pop();
  }
  return lines;
}

export function readTables(cacheDir: string): ArxivTables {
  const numNodes = Number(gzLines(cacheDir, 'raw/num-node-list.csv.gz')[0]);
  const labels = gzLines(cacheDir, 'raw/node-label.csv.gz').map(Number);
  const edges = gzLines(cacheDir, 'raw/edge.csv.gz').map((line) => {
    const [src, dst] = line.split(',').map(Number);
    return [src, dst] as [number, number];
  });
  const splitList = (name: string) =>
    gzLines(cacheDir, `split/time/${name}.csv.gz`).map(Number);
  const mapping = gzLines(cacheDir, 'mapping/nodeidx2paperid.csv.gz');
  const paperIds: string[] = [];
  for (const line of mapping) {
    const [idx, paperId] = line.split(',');
    const i = Number(idx);
    if (!Number.isInteger(i)) {
      continue; // header row
    }
    paperIds[i] = paperId;
  }
  return {
    numNodes,
    labels,
    edges,
    splits: { train: splitList('train'), valid: splitList('valid'), test: splitList('test') },
    paperIds,
  };
}

/** paperid -> "title. abstract" from the tab-separated dump. */
export function readTexts(cacheDir: string): Map<string, string> {
  const texts = new Map<string, string>();
  const raw = fs.readFileSync(path.join(cacheDir, 'titleabs.tsv'), 'utf-8');
  for (const line of raw.split('\n')) {
    const cols = line.split('\t');
    if (cols.length < 3) {
      continue;
    }
    const title = cols[1].trim();
    const abstract = cols[2].trim();
    const glue = /[.!?]$/.test(title) ? ' ' : '. ';
    texts.set(cols[0].trim(), title === '' ? abstract : `${title}${glue}${abstract}`);
  }
  return texts;
}
