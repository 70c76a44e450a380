import * as fs from 'fs';
import * as os from 'os';
import * as path from 'path';
import { afterEach, describe, expect, it, vi } from 'vitest';

import { main } from '../src/cli';
import { buildFixtureCache } from './fixture';

afterEach(() => {
  vi.restoreAllMocks();
});

describe('fetch-convert command', () => {
  it('converts and reports the clause count', async () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), 'tgl-cli-'));
    const cache = path.join(dir, 'cache');
    buildFixtureCache(cache);
    const out = path.join(dir, 'out.gff');
    const log = vi.spyOn(console, 'log').mockImplementation(() => undefined);
    vi.spyOn(console, 'error').mockImplementation(() => undefined);
    const code = await main([
      'fetch-convert',
      '--out', out,
      '--cache', cache,
      '--limit', '40',
      '--pos-allowlist', 'NOUN,PROPN,VERB,ADJ',
    ]);
    expect(code).toBe(0);
    expect(log).toHaveBeenCalledWith(expect.stringContaining('clauses 40'));
    expect(fs.existsSync(out)).toBe(true);
  }, 30_000);

  it('rejects unknown subcommands', async () => {
    vi.spyOn(console, 'error').mockImplementation(() => undefined);
    expect(await main(['frobnicate'])).toBe(2);
  });

  it('requires --out', async () => {
    const err = vi.spyOn(console, 'error').mockImplementation(() => undefined);
    expect(await main(['fetch-convert', '--cache', 'x'])).toBe(2);
    expect(err).toHaveBeenCalledWith(expect.stringContaining('--out'));
  });

  it('validates --limit', async () => {
    vi.spyOn(console, 'error').mockImplementation(() => undefined);
    expect(await main(['fetch-convert', '--out', 'x.gff', '--limit', 'zero'])).toBe(2);
  });

  it('reports conversion failures with a nonzero exit', async () => {
    const err = vi.spyOn(console, 'error').mockImplementation(() => undefined);
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), 'tgl-cli-'));
    const code = await main([
      'fetch-convert',
      '--out', path.join(dir, 'out.gff'),
      '--cache', path.join(dir, 'empty-cache'),
      '--dataset-url', 'http://127.0.0.1:9/arxiv.zip',
      '--text-url', 'http://127.0.0.1:9/titleabs.tsv.gz',
    ]);
    expect(code).toBe(1);
    expect(err).toHaveBeenCalledWith(expect.stringMatching(/retry/i));
  });
});
