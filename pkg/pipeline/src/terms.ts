/**
 * Ground terms on the pipeline side: plain tagged unions, serialized into
 * the GFF term grammar. Quoting matches the consumer exactly: an atom is
 * written bare iff it matches [a-z][A-Za-z0-9_]*, otherwise single-quoted
 * with embedded quotes doubled.
 */

export type GroundTerm =
  | { kind: 'atom'; name: string }
  | { kind: 'int'; value: number }
  | { kind: 'compound'; functor: string; args: GroundTerm[] };

export const atom = (name: string): GroundTerm => ({ kind: 'atom', name });
export const int = (value: number): GroundTerm => ({ kind: 'int', value });
export function compound(functor: string, args: GroundTerm[]): GroundTerm {
  if (args.length === 0) {
    throw new Error(`compound ${functor} needs at least one argument`);
  }
  return { kind: 'compound', functor, args };
}

const UNQUOTED = /^[a-z][A-Za-z0-9_]*$/;

export function atomText(name: string): string {
  return UNQUOTED.test(name) ? name : `'${name.replace(/'/g, "''")}'`;
}

export function serializeTerm(t: GroundTerm): string {
  switch (t.kind) {
    case 'atom':
      return atomText(t.name);
    case 'int':
      if (!Number.isInteger(t.value)) {
        throw new Error(`not an integer leaf: ${t.value}`);
      }
      return String(t.value);
    case 'compound':
      return `${atomText(t.functor)}(${t.args.map(serializeTerm).join(',')})`;
  }
}
