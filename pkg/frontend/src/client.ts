// Controller-side session client: sequencing, gesture handlers, reconnect
// queue, and incoming state tracking. Transport is injected so tests run
// without sockets; a WebSocket or TCP bridge only has to carry lines.

import {
  GESTURE_QUEUE_LIMIT,
  decodeMessage,
  encodeMessage,
  type Kind,
  type PackageDict,
  type PaceReport,
  type SessionMessage,
} from './protocol.js';
import { buildView, DEFAULT_OPTIONS, type ViewModel, type ViewOptions } from './viewmodel.js';

export interface Transport {
  send(line: string): void;
  onLine(handler: (line: string) => void): void;
}

export class PrompterClient {
  readonly sessionId: string;
  options: ViewOptions = { ...DEFAULT_OPTIONS };

  private transport: Transport;
  private seq = 0;
  private connected = false;
  private queued: SessionMessage[] = [];
  private pkg: PackageDict | null = null;
  private slideIndex = 0;
  private sentenceIndex = 0;
  private pace: PaceReport | null = null;

  constructor(sessionId: string, transport: Transport) {
    this.sessionId = sessionId;
    this.transport = transport;
    transport.onLine((line) => this.handleLine(line));
  }

  // -- lifecycle ------------------------------------------------------

  connect(): void {
    this.connected = true;
    this.send('register', { role: 'controller' });
    this.send('snapshot_request');
    const pending = this.queued;
    this.queued = [];
    for (const msg of pending) this.transport.send(encodeMessage(msg));
  }

  disconnect(): void {
    this.connected = false;
  }

  reconnect(): void {
    this.connect();
  }

  get isConnected(): boolean {
    return this.connected;
  }

  // -- gestures: exactly one message each -----------------------------

  tap(): void {
    this.send('tap');
  }

  swipe(direction: 'next' | 'prev'): void {
    this.send('swipe', { direction });
  }

  gotoSlide(index: number): void {
    this.send('goto_slide', { index });
  }

  dragScroll(deltaSentences: number): void {
    this.send('manual_scroll', { delta: deltaSentences });
  }

  toggleEmoji(): void {
    this.options = { ...this.options, emojiEnabled: !this.options.emojiEnabled };
  }

  setHandedness(handedness: 'left' | 'right'): void {
    this.options = { ...this.options, handedness };
  }

  // -- wire -----------------------------------------------------------

  private send(kind: Kind, payload: Record<string, unknown> = {}): void {
    this.seq += 1;
    const msg: SessionMessage = {
      seq: this.seq,
      session_id: this.sessionId,
      sender_role: 'controller',
      kind,
      payload,
    };
    if (this.connected) {
      this.transport.send(encodeMessage(msg));
    } else {
      if (this.queued.length >= GESTURE_QUEUE_LIMIT) {
        throw new Error('gesture queue overflow while disconnected');
      }
      this.queued.push(msg);
    }
  }

  private handleLine(line: string): void {
    if (!line.trim()) return;
    const msg = decodeMessage(line);
    switch (msg.kind) {
      case 'goto_slide':
        this.slideIndex = msg.payload['index'] as number;
        break;
      case 'state_sync':
        this.slideIndex = msg.payload['slide_index'] as number;
        this.sentenceIndex = msg.payload['sentence_index'] as number;
        this.pace = (msg.payload['pace'] as PaceReport | null) ?? null;
        break;
      case 'snapshot':
        this.slideIndex = msg.payload['slide_index'] as number;
        this.sentenceIndex = msg.payload['sentence_index'] as number;
        if (msg.payload['package']) this.pkg = msg.payload['package'] as PackageDict;
        break;
      default:
        break;
    }
  }

  loadPackage(pkg: PackageDict): void {
    this.pkg = pkg;
  }

  /** Current view model; pure function of received state and options. */
  view(): ViewModel {
    return buildView(
      this.pkg,
      { slideIndex: this.slideIndex, sentenceIndex: this.sentenceIndex, pace: this.pace },
      this.options,
    );
  }
}
