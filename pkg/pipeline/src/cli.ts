#!/usr/bin/env node
/**
 * fetch-convert: download (or reuse) the ogbn-arxiv distribution and write
 * the ground fact file.
 *
 *   tgl-pipeline fetch-convert --out FILE [--limit N] [--cache DIR]
 *       [--pos-allowlist NOUN,PROPN,VERB,ADJ] [--parser-cmd CMD]
 *       [--dataset-url URL] [--text-url URL]
 */

import { DEFAULT_POS_ALLOWLIST } from './distill';
import { fetchAndConvert } from './convert';
import { DownloadError } from './ogb';

interface Flags {
  [key: string]: string;
}

function parseFlags(argv: string[]): Flags {
  const flags: Flags = {};
  for (let i = 0; i < argv.length; i += 1) {
    const arg = argv[i];
    if (!arg.startsWith('--')) {
      throw new Error(`unexpected argument ${arg}`);
    }
    const value = argv[i + 1];
    if (value === undefined || value.startsWith('--')) {
      throw new Error(`flag ${arg} needs a value`);
    }
    flags[arg.slice(2)] = value;
    i += 1;
  }
  return flags;
}

const USAGE =
  'usage: tgl-pipeline fetch-convert --out FILE [--limit N] [--cache DIR] ' +
  '[--pos-allowlist LIST] [--parser-cmd CMD] [--dataset-url URL] [--text-url URL]';

export async function main(argv: string[]): Promise<number> {
  if (argv[0] !== 'fetch-convert') {
    console.error(USAGE);
    return 2;
  }
  let flags: Flags;
  try {
    flags = parseFlags(argv.slice(1));
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  if (!flags.out) {
    console.error('error: --out is required');
    return 2;
  }
  const limit = flags.limit !== undefined ? Number(flags.limit) : undefined;
  if (limit !== undefined && (!Number.isInteger(limit) || limit < 1)) {
    console.error(`error: --limit must be a positive integer, got ${flags.limit}`);
    return 2;
  }
  try {
    const result = await fetchAndConvert({
      out: flags.out,
      cacheDir: flags.cache ?? 'cache',
      limit,
      posAllowlist: flags['pos-allowlist']
        ? flags['pos-allowlist'].split(',').map((s) => s.trim()).filter(Boolean)
        : DEFAULT_POS_ALLOWLIST,
      parserCmd: flags['parser-cmd'],
      datasetUrl: flags['dataset-url'],
      textUrl: flags['text-url'],
      log: (message) => console.error(message),
    });
    console.log(
      `clauses ${result.clauses} skipped_edges ${result.skippedEdges} empty_content ${result.emptyContent}`,
    );
    return 0;
  } catch (err) {
    if (err instanceof DownloadError) {
      console.error(`error: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
}

if (require.main === module) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
