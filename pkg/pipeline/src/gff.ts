/**
 * Ground fact file emission: one `at(Id, Split, Label, Term, Neighbors).`
 * clause per node, newline separated, exactly the grammar the consumer's
 * parser validates.
 */

import { GroundTerm, serializeTerm } from './terms';

export type Split = 'tr' | 'va' | 'te';

export interface FactRecord {
  id: number;
  split: Split;
  label: number;
  content: GroundTerm;
  neighbors: number[];
}

export function serializeRecord(r: FactRecord): string {
  if (!Number.isInteger(r.id) || r.id < 0) {
    throw new Error(`node id must be a non-negative integer, got ${r.id}`);
  }
  if (!Number.isInteger(r.label) || r.label < 0) {
    throw new Error(`label must be a non-negative integer, got ${r.label}`);
  }
  for (const m of r.neighbors) {
    if (!Number.isInteger(m) || m < 0) {
      throw new Error(`neighbor ids must be non-negative integers, got ${m}`);
    }
  }
  return `at(${r.id},${r.split},${r.label},${serializeTerm(r.content)},[${r.neighbors.join(',')}]).`;
}

export function emitGff(records: Iterable<FactRecord>): string {
  const lines: string[] = [];
  for (const r of records) {
    lines.push(serializeRecord(r));
  }
  return lines.join('\n') + (lines.length > 0 ? '\n' : '');
}
