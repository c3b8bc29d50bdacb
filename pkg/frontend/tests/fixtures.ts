import type { PackageDict, SentenceDict, SessionMessage } from '../src/protocol.js';
import type { Transport } from '../src/client.js';

export function sentence(overrides: Partial<SentenceDict> = {}): SentenceDict {
  return {
    text: 'Hello world today.',
    tokens: ['hello', 'world', 'today'],
    prompts: [],
    keywords: [],
    syllabified: {},
    ...overrides,
  };
}

export function samplePackage(): PackageDict {
  return {
    version: 'trinity-package/1',
    slides: [
      {
        slide_index: 0,
        thumbnail_ref: 'thumb-0',
        sentences: [
          sentence({
            prompts: [
              { factor: 'Gesture', modulation: 'point', emoji_code: 'GESTURE_POINT' },
            ],
            keywords: [1],
          }),
          sentence({
            text: 'Subsequently we continue.',
            tokens: ['subsequently', 'we', 'continue'],
            syllabified: { '0': 'Sub-se-quent-ly' },
          }),
        ],
        visual_notes: '',
      },
      {
        slide_index: 1,
        thumbnail_ref: 'thumb-1',
        sentences: [sentence({ text: 'Second slide text.', tokens: ['second', 'slide', 'text'] })],
        visual_notes: '',
      },
      {
        slide_index: 2,
        thumbnail_ref: 'thumb-2',
        sentences: [sentence({ text: 'Third slide text.', tokens: ['third', 'slide', 'text'] })],
        visual_notes: '',
      },
    ],
    config: { selected_factors: [], used_preset: false },
    time_limit_s: 300.0,
    target_wpm: 100.0,
  };
}

/** Records outgoing lines; inject() simulates server-to-client delivery. */
export class FakeTransport implements Transport {
  sent: string[] = [];
  private handlers: Array<(line: string) => void> = [];

  send(line: string): void {
    this.sent.push(line);
  }

  onLine(handler: (line: string) => void): void {
    this.handlers.push(handler);
  }

  inject(msg: SessionMessage): void {
    for (const h of this.handlers) h(JSON.stringify(msg) + '\n');
  }

  sentMessages(): SessionMessage[] {
    return this.sent.map((l) => JSON.parse(l) as SessionMessage);
  }
}

export function engineMessage(
  kind: SessionMessage['kind'],
  payload: Record<string, unknown>,
): SessionMessage {
  return { seq: 0, session_id: 's1', sender_role: 'engine', kind, payload };
}
