// Wire protocol: newline-delimited JSON envelopes, matching the engine's
// session server byte for byte. This module owns (de)serialization only.

export const PACKAGE_VERSION = 'trinity-package/1';
export const DEFAULT_PORT = 7341;
export const RECONNECT_WINDOW_S = 60;
export const GESTURE_QUEUE_LIMIT = 64;

export type Role = 'controller' | 'responder' | 'engine';

export type Kind =
  | 'register'
  | 'upload_package'
  | 'tap'
  | 'swipe'
  | 'goto_slide'
  | 'click'
  | 'state_sync'
  | 'transcript'
  | 'manual_scroll'
  | 'snapshot_request'
  | 'snapshot'
  | 'heartbeat';

export interface SessionMessage {
  seq: number;
  session_id: string;
  sender_role: Role;
  kind: Kind;
  payload: Record<string, unknown>;
}

export interface PromptDict {
  factor: string;
  modulation: string;
  emoji_code: string;
}

export interface SentenceDict {
  text: string;
  tokens: string[];
  prompts: PromptDict[];
  keywords: number[];
  syllabified: Record<string, string>;
}

export interface SlideDict {
  slide_index: number;
  thumbnail_ref: string;
  sentences: SentenceDict[];
  visual_notes: string;
}

export interface PackageDict {
  version: string;
  slides: SlideDict[];
  config: { selected_factors: string[]; used_preset: boolean };
  time_limit_s: number;
  target_wpm: number;
}

export type PaceClass = 'TooFast' | 'OnPace' | 'SlightlySlow' | 'TooSlow';

export interface PaceReport {
  actual_fraction: number;
  ideal_fraction: number;
  recent_wpm: number;
  pace_class: PaceClass;
}

export function encodeMessage(msg: SessionMessage): string {
  return JSON.stringify(msg) + '\n';
}

export function decodeMessage(line: string): SessionMessage {
  const raw = JSON.parse(line) as Partial<SessionMessage>;
  if (
    typeof raw.seq !== 'number' ||
    typeof raw.session_id !== 'string' ||
    typeof raw.sender_role !== 'string' ||
    typeof raw.kind !== 'string'
  ) {
    throw new Error(`malformed envelope: ${line.trim()}`);
  }
  return {
    seq: raw.seq,
    session_id: raw.session_id,
    sender_role: raw.sender_role as Role,
    kind: raw.kind as Kind,
    payload: (raw.payload ?? {}) as Record<string, unknown>,
  };
}
