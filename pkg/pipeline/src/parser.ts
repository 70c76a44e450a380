/**
 * External dependency parser integration with a per-node parse cache.
 *
 * The parser itself is an external tool: any command that reads plain text
 * on stdin and writes CoNLL-U on stdout (for Stanza, a small wrapper script
 * does it). Parses live at <cache>/parses/<id>.conllu, one file per node,
 * so distillation reruns entirely offline once the cache is warm.
 */

import { spawnSync } from 'child_process';
import * as fs from 'fs';
import * as path from 'path';

import { DependencyParse, parseConllu } from './conllu';

export const DEFAULT_PARSER_CMD = 'stanza-conllu';

export function parseCachePath(cacheDir: string, nodeId: number): string {
  return path.join(cacheDir, 'parses', `${nodeId}.conllu`);
}

export function runExternalParser(parserCmd: string, text: string): string {
  const proc = spawnSync('/bin/sh', ['-c', parserCmd], {
    input: text,
    encoding: 'utf-8',
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new Error(`cannot run parser command ${parserCmd}: ${proc.error.message}`);
  }
  if (proc.status !== 0) {
    throw new Error(`parser command failed (exit ${proc.status}): ${proc.stderr}`);
  }
  return proc.stdout;
}

/**
 * Return the parses for one node, consulting the cache first and invoking
 * the external parser (then caching its output) on a miss.
 */
export function parsesForNode(
  cacheDir: string,
  nodeId: number,
  text: string,
  parserCmd: string = DEFAULT_PARSER_CMD,
): DependencyParse[] {
  const cached = parseCachePath(cacheDir, nodeId);
  if (!fs.existsSync(cached)) {
    const conllu = runExternalParser(parserCmd, text);
    fs.mkdirSync(path.dirname(cached), { recursive: true });
    fs.writeFileSync(cached + '.part', conllu);
    fs.renameSync(cached + '.part', cached);
  }
  return parseConllu(fs.readFileSync(cached, 'utf-8'));
}
