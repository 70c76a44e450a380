/**
 * Minimal CoNLL-U reader: keeps one token row per syntactic word with the
 * fields the distillation needs (index, lemma, universal POS, head, relation).
 * Multiword-token ranges (1-2) and empty nodes (3.1) are skipped.
 */

export interface Token {
  index: number;
  lemma: string;
  upos: string;
  head: number; // 0 marks the sentence root
  deprel: string;
}

export type DependencyParse = Token[];

export function parseConllu(text: string): DependencyParse[] {
  const sentences: DependencyParse[] = [];
  let current: Token[] = [];
  const flush = () => {
    if (current.length > 0) {
      validateSentence(current, sentences.length + 1);
      sentences.push(current);
      current = [];
    }
  };
  for (const rawLine of text.split('\n')) {
    const line = rawLine.trimEnd();
    if (line === '') {
      flush();
      continue;
    }
    if (line.startsWith('#')) {
      continue;
    }
    const cols = line.split('\t');
    if (cols.length < 8) {
      throw new Error(`malformed CoNLL-U row (${cols.length} columns): ${line}`);
    }
    if (cols[0].includes('-') || cols[0].includes('.')) {
      continue; // multiword range or empty node
    }
    const index = Number(cols[0]);
    const head = Number(cols[6]);
    if (!Number.isInteger(index) || !Number.isInteger(head)) {
      throw new Error(`non-integer token or head index: ${line}`);
    }
    current.push({ index, lemma: cols[2], upos: cols[3], head, deprel: cols[7] });
  }
  flush();
  return sentences;
}

function validateSentence(tokens: Token[], sentenceNumber: number): void {
  tokens.forEach((tok, i) => {
    if (tok.index !== i + 1) {
      throw new Error(
        `sentence ${sentenceNumber}: token indices must be contiguous from 1, saw ${tok.index} at position ${i + 1}`,
      );
    }
  });
  const roots = tokens.filter((t) => t.head === 0);
  if (roots.length !== 1) {
    throw new Error(`sentence ${sentenceNumber}: expected exactly one root, found ${roots.length}`);
  }
  for (const tok of tokens) {
    if (tok.head < 0 || tok.head > tokens.length) {
      throw new Error(`sentence ${sentenceNumber}: head ${tok.head} out of range`);
    }
  }
}
