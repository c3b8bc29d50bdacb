// The 24-entry prompt vocabulary and its glyph mapping. Codes mirror the
// engine's table exactly; the Unicode glyphs live only in this client.

export interface PromptRow {
  factor: string;
  modulation: string;
  code: string;
  glyph: string;
}

// Table order matches the engine's lookup table.
export const PROMPT_ROWS: PromptRow[] = [
  { factor: 'VocalPitch', modulation: 'high', code: 'PITCH_HIGH', glyph: '⤴️' },
  { factor: 'VocalPitch', modulation: 'normal', code: 'PITCH_NORMAL', glyph: '➡️' },
  { factor: 'VocalPitch', modulation: 'low', code: 'PITCH_LOW', glyph: '⤵️' },
  { factor: 'SpeechRate', modulation: 'fast', code: 'RATE_FAST', glyph: '\u{1F407}' },
  { factor: 'SpeechRate', modulation: 'normal', code: 'RATE_NORMAL', glyph: '⏱️' },
  { factor: 'SpeechRate', modulation: 'slow', code: 'RATE_SLOW', glyph: '\u{1F422}' },
  { factor: 'Volume', modulation: 'loud', code: 'VOLUME_LOUD', glyph: '\u{1F50A}' },
  { factor: 'Volume', modulation: 'normal', code: 'VOLUME_NORMAL', glyph: '\u{1F509}' },
  { factor: 'Volume', modulation: 'soft', code: 'VOLUME_SOFT', glyph: '\u{1F508}' },
  { factor: 'FacialExpression', modulation: 'happy', code: 'FACIAL_HAPPY', glyph: '\u{1F60A}' },
  { factor: 'FacialExpression', modulation: 'sad', code: 'FACIAL_SAD', glyph: '\u{1F622}' },
  { factor: 'FacialExpression', modulation: 'angry', code: 'FACIAL_ANGRY', glyph: '\u{1F620}' },
  { factor: 'FacialExpression', modulation: 'surprised', code: 'FACIAL_SURPRISED', glyph: '\u{1F62E}' },
  { factor: 'FacialExpression', modulation: 'embarrassed', code: 'FACIAL_EMBARRASSED', glyph: '\u{1F633}' },
  { factor: 'FacialExpression', modulation: 'serious', code: 'FACIAL_SERIOUS', glyph: '\u{1F610}' },
  { factor: 'Composure', modulation: 'calm', code: 'COMPOSURE_CALM', glyph: '\u{1F60C}' },
  { factor: 'Composure', modulation: 'relaxed', code: 'COMPOSURE_RELAXED', glyph: '\u{1F9D8}' },
  { factor: 'Composure', modulation: 'confident', code: 'COMPOSURE_CONFIDENT', glyph: '\u{1F60E}' },
  { factor: 'Gesture', modulation: 'wave', code: 'GESTURE_WAVE', glyph: '\u{1F44B}' },
  { factor: 'Gesture', modulation: 'unfold', code: 'GESTURE_UNFOLD', glyph: '\u{1F450}' },
  { factor: 'Gesture', modulation: 'point', code: 'GESTURE_POINT', glyph: '\u{1F449}' },
  { factor: 'Posture', modulation: 'stand', code: 'POSTURE_STAND', glyph: '\u{1F9CD}' },
  { factor: 'Posture', modulation: 'walk', code: 'POSTURE_WALK', glyph: '\u{1F6B6}' },
  { factor: 'EyeContact', modulation: 'direct', code: 'EYE_CONTACT_DIRECT', glyph: '\u{1F441}️' },
];

const BY_CODE = new Map(PROMPT_ROWS.map((r) => [r.code, r]));

// Marker spelling used in the textual fallback, matching the script DSL.
const MARKER_NAMES: Record<string, string> = {
  VocalPitch: 'pitch',
  SpeechRate: 'rate',
  Volume: 'volume',
  EyeContact: 'eye contact',
  FacialExpression: 'facial',
  Composure: 'composure',
  Gesture: 'gesture',
  Posture: 'posture',
};

export function glyphFor(code: string): string {
  const row = BY_CODE.get(code);
  if (!row) throw new Error(`unknown emoji code: ${code}`);
  return row.glyph;
}

export function markerTextFor(code: string): string {
  const row = BY_CODE.get(code);
  if (!row) throw new Error(`unknown emoji code: ${code}`);
  return `[${MARKER_NAMES[row.factor]} - ${row.modulation}]`;
}

/** All 24 rows; display column switches with the deactivate toggle. */
export function lookupPanelRows(emojiEnabled: boolean) {
  return PROMPT_ROWS.map((r) => ({
    factor: r.factor,
    modulation: r.modulation,
    code: r.code,
    display: emojiEnabled ? r.glyph : markerTextFor(r.code),
  }));
}
