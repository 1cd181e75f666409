// Map-to-screen transform. World coordinates are millimetres with the
// origin at the map's top-left corner and y growing downward (rows), which
// conveniently matches canvas pixel coordinates, so the transform is a
// uniform scale plus centering offsets.

export interface Transform {
  scale: number;   // px per mm
  offsetX: number; // px
  offsetY: number; // px
}

export function fitTransform(
  worldWidthMm: number,
  worldHeightMm: number,
  canvasWidthPx: number,
  canvasHeightPx: number,
): Transform {
  const scale = Math.min(canvasWidthPx / worldWidthMm, canvasHeightPx / worldHeightMm);
  return {
    scale,
    offsetX: (canvasWidthPx - worldWidthMm * scale) / 2,
    offsetY: (canvasHeightPx - worldHeightMm * scale) / 2,
  };
}

export function worldToScreen(t: Transform, xMm: number, yMm: number): [number, number] {
  return [t.offsetX + xMm * t.scale, t.offsetY + yMm * t.scale];
}

/** Count map dimensions from the raw map text (rows × longest line). */
export function mapSizeMm(mapText: string, resolutionMm: number): [number, number] {
  const rows = mapText.replace(/\r/g, '').split('\n').filter((r) => r.length > 0);
  const cols = rows.reduce((w, r) => Math.max(w, r.length), 0);
  return [cols * resolutionMm, rows.length * resolutionMm];
}
