import { describe, expect, it } from 'vitest';

import { parseConllu } from '../src/conllu';
import { distill } from '../src/distill';
import { serializeTerm } from '../src/terms';
import { PARAGRAPH_CONLLU, PARAGRAPH_TERM } from './paragraph';

const sentence = (rows: string[]) => parseConllu(rows.join('\n'));

describe('distill', () => {
  it('turns one two-word sentence into predicate-over-argument', () => {
    const parses = sentence([
      '1\tcats\tcat\tNOUN\tNNS\t_\t2\tnsubj\t_\t_',
      '2\tsleep\tsleep\tVERB\tVBP\t_\t0\troot\t_\t_',
    ]);
    expect(serializeTerm(distill(parses))).toBe('text_term(sleep(cat))');
  });

  it('reproduces the programming-paradigms paragraph term', () => {
    const parses = parseConllu(PARAGRAPH_CONLLU);
    expect(parses).toHaveLength(3);
    const term = distill(parses);
    expect(serializeTerm(term)).toBe(PARAGRAPH_TERM);
    if (term.kind !== 'compound') {
      throw new Error('expected a compound');
    }
    expect(serializeTerm(term.args[0])).toBe(
      'paradigm(programming(logic,functional,inference(type)),declarative)',
    );
  });

  it('distills an all-stopword sentence to the empty atom', () => {
    const parses = sentence([
      '1\tof\tof\tADP\tIN\t_\t2\tcase\t_\t_',
      '2\tit\tit\tPRON\tPRP\t_\t0\troot\t_\t_',
    ]);
    expect(serializeTerm(distill(parses))).toBe('empty');
  });

  it('needs at least one sentence', () => {
    expect(() => distill([])).toThrow(/at least one/);
  });

  it('merges equal lemmas across sentences', () => {
    const parses = parseConllu(
      [
        '1\tdogs\tdog\tNOUN\tNNS\t_\t2\tnsubj\t_\t_',
        '2\trun\trun\tVERB\tVBP\t_\t0\troot\t_\t_',
        '',
        '1\tdogs\tdog\tNOUN\tNNS\t_\t2\tnsubj\t_\t_',
        '2\tsleep\tsleep\tVERB\tVBP\t_\t0\troot\t_\t_',
      ].join('\n'),
    );
    // Both verbs govern the single merged dog node; it is duplicated on expansion.
    expect(serializeTerm(distill(parses))).toBe('text_term(run(dog),sleep(dog))');
  });

  it('skips an edge that would close a cycle', () => {
    const parses = parseConllu(
      [
        '1\tlight\tlight\tNOUN\tNN\t_\t2\tnsubj\t_\t_',
        '2\tcolors\tcolor\tVERB\tVBZ\t_\t0\troot\t_\t_',
        '3\twalls\twall\tNOUN\tNNS\t_\t2\tobj\t_\t_',
        '',
        '1\tcolor\tcolor\tNOUN\tNN\t_\t2\tnsubj\t_\t_',
        '2\tlights\tlight\tVERB\tVBZ\t_\t0\troot\t_\t_',
        '3\trooms\troom\tNOUN\tNNS\t_\t2\tobj\t_\t_',
      ].join('\n'),
    );
    // Sentence 1 adds color->light; sentence 2's light->color is dropped,
    // while light->room survives.
    expect(serializeTerm(distill(parses))).toBe('text_term(color(light(room),wall))');
  });

  it('drops a self-edge from merged lemmas', () => {
    const parses = parseConllu(
      [
        '1\tplans\tplan\tNOUN\tNNS\t_\t2\tnsubj\t_\t_',
        '2\tplan\tplan\tVERB\tVBP\t_\t0\troot\t_\t_',
      ].join('\n'),
    );
    expect(serializeTerm(distill(parses))).toBe('text_term(plan)');
  });

  it('honors a custom allowlist', () => {
    const parses = sentence([
      '1\tcats\tcat\tNOUN\tNNS\t_\t2\tnsubj\t_\t_',
      '2\tsleep\tsleep\tVERB\tVBP\t_\t0\troot\t_\t_',
    ]);
    expect(serializeTerm(distill(parses, ['NOUN']))).toBe('text_term(cat)');
    expect(serializeTerm(distill(parses, ['X']))).toBe('empty');
  });

  it('lowercases lemmas so proper and common forms merge', () => {
    const parses = parseConllu(
      [
        '1\tLogic\tLogic\tPROPN\tNNP\t_\t2\tcompound\t_\t_',
        '2\tProgramming\tProgramming\tPROPN\tNNP\t_\t0\troot\t_\t_',
        '',
        '1\tprogramming\tprogramming\tNOUN\tNN\t_\t0\troot\t_\t_',
        '2\thelps\thelp\tVERB\tVBZ\t_\t1\tacl\t_\t_',
      ].join('\n'),
    );
    expect(serializeTerm(distill(parses))).toBe('text_term(programming(logic,help))');
  });

  it('keeps multiple roots when a sentence splits apart', () => {
    // The syntactic root is filtered out, leaving two content islands.
    const parses = sentence([
      '1\tcats\tcat\tNOUN\tNNS\t_\t2\tnsubj\t_\t_',
      '2\tare\tbe\tAUX\tVBP\t_\t0\troot\t_\t_',
      '3\tnice\tnice\tADJ\tJJ\t_\t2\txcomp\t_\t_',
    ]);
    expect(serializeTerm(distill(parses))).toBe('text_term(cat,nice)');
  });
});
