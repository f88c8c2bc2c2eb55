/**
 * Self-contained PNG backend: rasterises a scene (Bresenham lines with dash
 * support, scanline polygon fill, a 5x7 bitmap font) and encodes RGBA pixels
 * as a PNG using node's zlib. No native canvas required.
 */

import { deflateSync } from "node:zlib";
import { Scene, ScenePolygon, ScenePolyline, SceneText } from "./chart.js";

class Raster {
    readonly width: number;
    readonly height: number;
    readonly pixels: Uint8ClampedArray;

    constructor(width: number, height: number) {
        this.width = width;
        this.height = height;
        this.pixels = new Uint8ClampedArray(width * height * 4).fill(255);
    }

    blend(x: number, y: number, r: number, g: number, b: number, alpha: number): void {
        if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
        const i = (y * this.width + x) * 4;
        this.pixels[i] = this.pixels[i] * (1 - alpha) + r * alpha;
        this.pixels[i + 1] = this.pixels[i + 1] * (1 - alpha) + g * alpha;
        this.pixels[i + 2] = this.pixels[i + 2] * (1 - alpha) + b * alpha;
        this.pixels[i + 3] = 255;
    }
}

function parseColor(color: string): [number, number, number] {
    const hex = color.replace("#", "");
    return [
        parseInt(hex.slice(0, 2), 16),
        parseInt(hex.slice(2, 4), 16),
        parseInt(hex.slice(4, 6), 16),
    ];
}

function drawSegment(
    raster: Raster,
    x0: number, y0: number, x1: number, y1: number,
    rgb: [number, number, number],
    width: number,
    dash: number[] | undefined,
    dashState: { offset: number },
): void {
    let ax = Math.round(x0);
    let ay = Math.round(y0);
    const bx = Math.round(x1);
    const by = Math.round(y1);
    const dx = Math.abs(bx - ax);
    const dy = -Math.abs(by - ay);
    const sx = ax < bx ? 1 : -1;
    const sy = ay < by ? 1 : -1;
    let err = dx + dy;
    const period = dash ? dash[0] + dash[1] : 0;
    const extra = Math.max(0, Math.floor(width / 2));
    for (;;) {
        const on = !dash || dashState.offset % period < dash[0];
        if (on) {
            for (let ox = -extra; ox <= extra; ox++) {
                for (let oy = -extra; oy <= extra; oy++) {
                    raster.blend(ax + ox, ay + oy, rgb[0], rgb[1], rgb[2], 1);
                }
            }
        }
        if (ax === bx && ay === by) break;
        const e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            ax += sx;
        }
        if (e2 <= dx) {
            err += dx;
            ay += sy;
        }
        dashState.offset += 1;
    }
}

function drawPolyline(raster: Raster, node: ScenePolyline): void {
    const rgb = parseColor(node.color);
    const dashState = { offset: 0 };
    if (node.points.length === 1) {
        const [x, y] = node.points[0];
        drawSegment(raster, x - 3, y, x + 3, y, rgb, node.width, undefined, dashState);
        return;
    }
    for (let i = 0; i + 1 < node.points.length; i++) {
        const [x0, y0] = node.points[i];
        const [x1, y1] = node.points[i + 1];
        drawSegment(raster, x0, y0, x1, y1, rgb, node.width, node.dash, dashState);
    }
}

function fillPolygon(raster: Raster, node: ScenePolygon): void {
    const rgb = parseColor(node.fill);
    const ys = node.points.map(([, y]) => y);
    const yLo = Math.max(0, Math.floor(Math.min(...ys)));
    const yHi = Math.min(raster.height - 1, Math.ceil(Math.max(...ys)));
    for (let y = yLo; y <= yHi; y++) {
        const crossings: number[] = [];
        const count = node.points.length;
        for (let i = 0; i < count; i++) {
            const [x0, y0] = node.points[i];
            const [x1, y1] = node.points[(i + 1) % count];
            if ((y0 <= y && y1 > y) || (y1 <= y && y0 > y)) {
                crossings.push(x0 + ((y - y0) / (y1 - y0)) * (x1 - x0));
            }
        }
        crossings.sort((a, b) => a - b);
        for (let i = 0; i + 1 < crossings.length; i += 2) {
            const xLo = Math.max(0, Math.round(crossings[i]));
            const xHi = Math.min(raster.width - 1, Math.round(crossings[i + 1]));
            for (let x = xLo; x <= xHi; x++) {
                raster.blend(x, y, rgb[0], rgb[1], rgb[2], node.opacity);
            }
        }
    }
}

// 5x7 font; lowercase renders through the uppercase glyphs
const GLYPH_SOURCE: Record<string, string[]> = {
    A: [".XXX.", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"],
    B: ["XXXX.", "X...X", "X...X", "XXXX.", "X...X", "X...X", "XXXX."],
    C: [".XXX.", "X...X", "X....", "X....", "X....", "X...X", ".XXX."],
    D: ["XXXX.", "X...X", "X...X", "X...X", "X...X", "X...X", "XXXX."],
    E: ["XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "XXXXX"],
    F: ["XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "X...."],
    G: [".XXX.", "X...X", "X....", "X.XXX", "X...X", "X...X", ".XXX."],
    H: ["X...X", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"],
    I: ["XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "XXXXX"],
    J: ["..XXX", "...X.", "...X.", "...X.", "...X.", "X..X.", ".XX.."],
    K: ["X...X", "X..X.", "X.X..", "XX...", "X.X..", "X..X.", "X...X"],
    L: ["X....", "X....", "X....", "X....", "X....", "X....", "XXXXX"],
    M: ["X...X", "XX.XX", "X.X.X", "X.X.X", "X...X", "X...X", "X...X"],
    N: ["X...X", "XX..X", "X.X.X", "X..XX", "X...X", "X...X", "X...X"],
    O: [".XXX.", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."],
    P: ["XXXX.", "X...X", "X...X", "XXXX.", "X....", "X....", "X...."],
    Q: [".XXX.", "X...X", "X...X", "X...X", "X.X.X", "X..X.", ".XX.X"],
    R: ["XXXX.", "X...X", "X...X", "XXXX.", "X.X..", "X..X.", "X...X"],
    S: [".XXXX", "X....", "X....", ".XXX.", "....X", "....X", "XXXX."],
    T: ["XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "..X.."],
    U: ["X...X", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."],
    V: ["X...X", "X...X", "X...X", "X...X", "X...X", ".X.X.", "..X.."],
    W: ["X...X", "X...X", "X...X", "X.X.X", "X.X.X", "XX.XX", "X...X"],
    X: ["X...X", "X...X", ".X.X.", "..X..", ".X.X.", "X...X", "X...X"],
    Y: ["X...X", "X...X", ".X.X.", "..X..", "..X..", "..X..", "..X.."],
    Z: ["XXXXX", "....X", "...X.", "..X..", ".X...", "X....", "XXXXX"],
    "0": [".XXX.", "X...X", "X..XX", "X.X.X", "XX..X", "X...X", ".XXX."],
    "1": ["..X..", ".XX..", "..X..", "..X..", "..X..", "..X..", "XXXXX"],
    "2": [".XXX.", "X...X", "....X", "...X.", "..X..", ".X...", "XXXXX"],
    "3": [".XXX.", "X...X", "....X", "..XX.", "....X", "X...X", ".XXX."],
    "4": ["...X.", "..XX.", ".X.X.", "X..X.", "XXXXX", "...X.", "...X."],
    "5": ["XXXXX", "X....", "XXXX.", "....X", "....X", "X...X", ".XXX."],
    "6": [".XXX.", "X....", "X....", "XXXX.", "X...X", "X...X", ".XXX."],
    "7": ["XXXXX", "....X", "...X.", "..X..", ".X...", ".X...", ".X..."],
    "8": [".XXX.", "X...X", "X...X", ".XXX.", "X...X", "X...X", ".XXX."],
    "9": [".XXX.", "X...X", "X...X", ".XXXX", "....X", "....X", ".XXX."],
    ".": [".....", ".....", ".....", ".....", ".....", ".XX..", ".XX.."],
    ",": [".....", ".....", ".....", ".....", ".XX..", "..X..", ".X..."],
    "-": [".....", ".....", ".....", "XXXXX", ".....", ".....", "....."],
    "_": [".....", ".....", ".....", ".....", ".....", ".....", "XXXXX"],
    "(": ["...X.", "..X..", ".X...", ".X...", ".X...", "..X..", "...X."],
    ")": [".X...", "..X..", "...X.", "...X.", "...X.", "..X..", ".X..."],
    ":": [".....", ".XX..", ".XX..", ".....", ".XX..", ".XX..", "....."],
    "/": ["....X", "...X.", "...X.", "..X..", ".X...", ".X...", "X...."],
    "%": ["XX..X", "XX.X.", "..X..", "..X..", ".X...", "X..XX", "X..XX"],
    " ": [".....", ".....", ".....", ".....", ".....", ".....", "....."],
};

const GLYPHS = new Map<string, number[]>(
    Object.entries(GLYPH_SOURCE).map(([ch, rows]) => [
        ch,
        rows.map((row) => {
            let bits = 0;
            for (let i = 0; i < 5; i++) {
                if (row[i] === "X") bits |= 1 << (4 - i);
            }
            return bits;
        }),
    ]),
);

function drawText(raster: Raster, node: SceneText): void {
    const rgb = parseColor(node.color);
    const scale = node.size >= 14 ? 2 : 1;
    const advance = 6 * scale;
    const text = node.text.toUpperCase();
    const width = text.length * advance - scale;
    let startX = Math.round(node.x);
    if (node.anchor === "middle") startX -= Math.round(width / 2);
    if (node.anchor === "end") startX -= width;
    const startY = Math.round(node.y) - 7 * scale + scale; // baseline-ish alignment
    for (let c = 0; c < text.length; c++) {
        const glyph = GLYPHS.get(text[c]) ?? GLYPHS.get(" ")!;
        for (let row = 0; row < 7; row++) {
            for (let col = 0; col < 5; col++) {
                if (glyph[row] & (1 << (4 - col))) {
                    for (let oy = 0; oy < scale; oy++) {
                        for (let ox = 0; ox < scale; ox++) {
                            raster.blend(
                                startX + c * advance + col * scale + ox,
                                startY + row * scale + oy,
                                rgb[0], rgb[1], rgb[2], 1,
                            );
                        }
                    }
                }
            }
        }
    }
}

export function rasterize(scene: Scene): Raster {
    const raster = new Raster(scene.width, scene.height);
    for (const node of scene.nodes) {
        if (node.kind === "polygon") fillPolygon(raster, node);
        else if (node.kind === "polyline") drawPolyline(raster, node);
        else drawText(raster, node);
    }
    return raster;
}

// ---------------------------------------------------------------------------
// PNG encoding

const CRC_TABLE = (() => {
    const table = new Uint32Array(256);
    for (let i = 0; i < 256; i++) {
        let c = i;
        for (let k = 0; k < 8; k++) {
            c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
        }
        table[i] = c >>> 0;
    }
    return table;
})();

function crc32(bytes: Uint8Array): number {
    let crc = 0xffffffff;
    for (const byte of bytes) {
        crc = CRC_TABLE[(crc ^ byte) & 0xff] ^ (crc >>> 8);
    }
    return (crc ^ 0xffffffff) >>> 0;
}

function chunk(type: string, body: Uint8Array): Buffer {
    const header = Buffer.alloc(8);
    header.writeUInt32BE(body.length, 0);
    header.write(type, 4, "ascii");
    const crcInput = Buffer.concat([header.subarray(4), body]);
    const footer = Buffer.alloc(4);
    footer.writeUInt32BE(crc32(crcInput), 0);
    return Buffer.concat([header, body, footer]);
}

export function encodePng(raster: Raster): Buffer {
    const { width, height, pixels } = raster;
    const ihdr = Buffer.alloc(13);
    ihdr.writeUInt32BE(width, 0);
    ihdr.writeUInt32BE(height, 4);
    ihdr.writeUInt8(8, 8); // bit depth
    ihdr.writeUInt8(6, 9); // colour type RGBA
    const scanlines = Buffer.alloc(height * (width * 4 + 1));
    for (let y = 0; y < height; y++) {
        const rowStart = y * (width * 4 + 1);
        scanlines[rowStart] = 0; // filter: none
        scanlines.set(pixels.subarray(y * width * 4, (y + 1) * width * 4), rowStart + 1);
    }
    return Buffer.concat([
        Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
        chunk("IHDR", ihdr),
        chunk("IDAT", deflateSync(scanlines)),
        chunk("IEND", new Uint8Array(0)),
    ]);
}

export function renderPng(scene: Scene): Buffer {
    return encodePng(rasterize(scene));
}
