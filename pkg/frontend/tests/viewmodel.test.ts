import { describe, expect, it } from 'vitest';

import { PROMPT_ROWS, lookupPanelRows } from '../src/emoji.js';
import { buildView, renderPace, fadeLevel } from '../src/viewmodel.js';
import type { PaceReport } from '../src/protocol.js';
import { samplePackage } from './fixtures.js';

const state = (slide: number, sent: number, pace: PaceReport | null = null) => ({
  slideIndex: slide,
  sentenceIndex: sent,
  pace,
});

describe('package rendering', () => {
  // [SECONDARY] loaded package: thumbnails, 24-row panel, deactivate toggle
  it('shows prev/current/next thumbnails with non-current translucent', () => {
    const view = buildView(samplePackage(), state(1, 2));
    expect(view.thumbnails.previous).toMatchObject({ thumbnailRef: 'thumb-0', translucent: true });
    expect(view.thumbnails.current).toMatchObject({ thumbnailRef: 'thumb-1', translucent: false });
    expect(view.thumbnails.next).toMatchObject({ thumbnailRef: 'thumb-2', translucent: true });
  });

  it('clips thumbnails at the deck edges', () => {
    const first = buildView(samplePackage(), state(0, 0));
    expect(first.thumbnails.previous).toBeNull();
    const last = buildView(samplePackage(), state(2, 3));
    expect(last.thumbnails.next).toBeNull();
  });

  it('lookup panel has exactly 24 rows in table order', () => {
    const view = buildView(samplePackage(), state(0, 0));
    expect(view.lookupPanel).toHaveLength(24);
    expect(view.lookupPanel.map((r) => r.code)).toEqual(PROMPT_ROWS.map((r) => r.code));
    const codes = new Set(view.lookupPanel.map((r) => r.code));
    expect(codes.size).toBe(24);
  });

  it('deactivate toggle switches glyphs to textual markers', () => {
    const on = buildView(samplePackage(), state(0, 0), { emojiEnabled: true, handedness: 'right' });
    expect(on.script[0].prompts).toEqual(['\u{1F449}']);
    const off = buildView(samplePackage(), state(0, 0), { emojiEnabled: false, handedness: 'right' });
    expect(off.script[0].prompts).toEqual(['[gesture - point]']);
    const offPanel = lookupPanelRows(false);
    expect(offPanel.find((r) => r.code === 'EYE_CONTACT_DIRECT')!.display).toBe(
      '[eye contact - direct]',
    );
  });

  it('keywords render bold and syllabified words hyphenated', () => {
    const view = buildView(samplePackage(), state(0, 0));
    expect(view.script[0].words[1]).toEqual({ text: 'world', bold: true });
    expect(view.script[1].words[0].text).toBe('Sub-se-quent-ly');
  });

  it('current sentence is the only highlighted one', () => {
    const view = buildView(samplePackage(), state(0, 1));
    expect(view.script.map((s) => s.current)).toEqual([false, true, false, false]);
  });

  it('handedness toggle mirrors the layout; default right', () => {
    expect(buildView(samplePackage(), state(0, 0)).mirrored).toBe(false);
    const left = buildView(samplePackage(), state(0, 0), { emojiEnabled: true, handedness: 'left' });
    expect(left.mirrored).toBe(true);
  });
});

describe('pace visuals', () => {
  const report = (pace_class: PaceReport['pace_class'], recent_wpm = 100): PaceReport => ({
    actual_fraction: 0.4,
    ideal_fraction: 0.5,
    recent_wpm,
    pace_class,
  });

  it('TooFast shows up-triangles, TooSlow down-triangles', () => {
    expect(renderPace(report('TooFast'), 100)).toEqual({ triangles: 'up', opacity: 1.0 });
    expect(renderPace(report('TooSlow'), 100)).toEqual({ triangles: 'down', opacity: 1.0 });
  });

  it('OnPace shows full underpainting and no triangles', () => {
    expect(renderPace(report('OnPace'), 100)).toEqual({ triangles: 'none', opacity: 1.0 });
  });

  it('SlightlySlow fades the underpainting across the band', () => {
    // fade 0.5 at wpm = lo + 2/7 * (hi - lo) for target 100: 75 + 30/7
    const wpm = 75 + 30 / 7;
    expect(fadeLevel(report('SlightlySlow', wpm), 100)).toBeCloseTo(0.5, 9);
    expect(renderPace(report('SlightlySlow', 75), 100).opacity).toBeCloseTo(0.3, 9);
    expect(renderPace(report('SlightlySlow', 90), 100).opacity).toBeCloseTo(1.0, 9);
  });

  it('dual bars carry actual (red, left) and ideal (blue, right) fractions', () => {
    const view = buildView(samplePackage(), state(0, 0, report('OnPace')));
    expect(view.bars).toEqual({ actual: 0.4, ideal: 0.5 });
  });
});
