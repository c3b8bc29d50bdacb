// Pure view-model construction: the rendered view is a function of the
// last snapshot/state-sync plus local display options, nothing else.

import { glyphFor, markerTextFor, lookupPanelRows } from './emoji.js';
import type { PackageDict, PaceReport, SentenceDict } from './protocol.js';

export type Handedness = 'left' | 'right';
export type Triangles = 'up' | 'down' | 'none';

export interface ViewOptions {
  emojiEnabled: boolean;
  handedness: Handedness;
}

export const DEFAULT_OPTIONS: ViewOptions = { emojiEnabled: true, handedness: 'right' };

export interface Thumbnail {
  slideIndex: number;
  thumbnailRef: string;
  translucent: boolean;
}

export interface WordView {
  text: string;
  bold: boolean;
}

export interface SentenceView {
  index: number; // global sentence index across slides
  slideIndex: number;
  current: boolean;
  opacity: number; // underpainting opacity for the current sentence
  words: WordView[];
  prompts: string[]; // glyphs, or "[factor - modulation]" when deactivated
}

export interface ViewModel {
  thumbnails: { previous: Thumbnail | null; current: Thumbnail | null; next: Thumbnail | null };
  bars: { actual: number; ideal: number }; // red left bar, blue right bar
  triangles: Triangles;
  script: SentenceView[];
  lookupPanel: ReturnType<typeof lookupPanelRows>;
  handedness: Handedness;
  mirrored: boolean; // left-handed layout flips horizontally
}

export interface PositionState {
  slideIndex: number;
  sentenceIndex: number;
  pace: PaceReport | null;
}

// Fade-band constants shared with the engine's pace classifier.
export const FADE_FLOOR = 0.3;
export const SLOW_FADE_LO = 0.75;
export const SLOW_FADE_HI = 0.9;
export const DEFAULT_TARGET_WPM = 130;

/** Underpainting opacity; only the slightly-slow band fades. */
export function fadeLevel(pace: PaceReport, targetWpm: number): number {
  if (pace.pace_class !== 'SlightlySlow') return 1.0;
  const lo = SLOW_FADE_LO * targetWpm;
  const hi = SLOW_FADE_HI * targetWpm;
  const frac = Math.max(0, Math.min(1, (pace.recent_wpm - lo) / (hi - lo)));
  return FADE_FLOOR + (1 - FADE_FLOOR) * frac;
}

/** Triangle direction and underpainting opacity for a pace report. */
export function renderPace(
  pace: PaceReport | null,
  targetWpm: number = DEFAULT_TARGET_WPM,
): { triangles: Triangles; opacity: number } {
  if (!pace) return { triangles: 'none', opacity: 1.0 };
  switch (pace.pace_class) {
    case 'TooFast':
      return { triangles: 'up', opacity: 1.0 };
    case 'TooSlow':
      return { triangles: 'down', opacity: 1.0 };
    case 'SlightlySlow':
      return { triangles: 'none', opacity: fadeLevel(pace, targetWpm) };
    default:
      return { triangles: 'none', opacity: 1.0 };
  }
}

function sentenceView(
  s: SentenceDict,
  index: number,
  slideIndex: number,
  current: boolean,
  opacity: number,
  emojiEnabled: boolean,
): SentenceView {
  const words: WordView[] = [];
  let token = 0;
  const keywords = new Set(s.keywords);
  for (const raw of s.text.split(/\s+/)) {
    const syllabified = s.syllabified[String(token)];
    words.push({ text: syllabified ?? raw, bold: keywords.has(token) });
    token += 1;
  }
  const prompts = s.prompts.map((p) =>
    emojiEnabled ? glyphFor(p.emoji_code) : markerTextFor(p.emoji_code),
  );
  return { index, slideIndex, current, opacity: current ? opacity : 1.0, words, prompts };
}

function thumbnail(pkg: PackageDict, index: number, translucent: boolean): Thumbnail | null {
  if (index < 0 || index >= pkg.slides.length) return null;
  return { slideIndex: index, thumbnailRef: pkg.slides[index].thumbnail_ref, translucent };
}

export function buildView(
  pkg: PackageDict | null,
  state: PositionState,
  options: ViewOptions = DEFAULT_OPTIONS,
): ViewModel {
  const { triangles, opacity } = renderPace(state.pace, pkg?.target_wpm ?? DEFAULT_TARGET_WPM);
  const base: ViewModel = {
    thumbnails: { previous: null, current: null, next: null },
    bars: {
      actual: state.pace ? state.pace.actual_fraction : 0,
      ideal: state.pace ? state.pace.ideal_fraction : 0,
    },
    triangles,
    script: [],
    lookupPanel: lookupPanelRows(options.emojiEnabled),
    handedness: options.handedness,
    mirrored: options.handedness === 'left',
  };
  if (!pkg) return base;

  base.thumbnails = {
    previous: thumbnail(pkg, state.slideIndex - 1, true),
    current: thumbnail(pkg, state.slideIndex, false),
    next: thumbnail(pkg, state.slideIndex + 1, true),
  };
  let global = 0;
  for (const slide of pkg.slides) {
    for (const s of slide.sentences) {
      base.script.push(
        sentenceView(
          s,
          global,
          slide.slide_index,
          global === state.sentenceIndex,
          opacity,
          options.emojiEnabled,
        ),
      );
      global += 1;
    }
  }
  return base;
}
