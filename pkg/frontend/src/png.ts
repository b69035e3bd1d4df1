/**
 * Minimal PNG writer/reader: 8-bit RGBA, zlib via node:zlib, filter 0.
 *
 * Only what the renderer needs -- no interlacing, no palettes. The reader
 * handles exactly the files the writer produces (used by tests and by the
 * idempotence check).
 */

import { deflateSync, inflateSync } from "node:zlib";

const SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Buffer): number {
  let c = 0xffffffff;
  for (let i = 0; i < buf.length; i++) {
    c = CRC_TABLE[(c ^ buf[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const head = Buffer.alloc(4);
  head.writeUInt32BE(data.length, 0);
  const body = Buffer.concat([Buffer.from(type, "latin1"), data]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head, body, tail]);
}

export interface Image {
  width: number;
  height: number;
  /** RGBA, row-major, 4 bytes per pixel. */
  pixels: Uint8ClampedArray;
}

/** Encode an RGBA image; `texts` become tEXt chunks (e.g. title). */
export function encodePng(
  image: Image,
  texts: Record<string, string> = {},
): Buffer {
  const { width, height, pixels } = image;
  if (pixels.length !== width * height * 4) {
    throw new Error("pixel buffer does not match dimensions");
  }
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const raw = Buffer.alloc(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (1 + width * 4);
    raw[rowStart] = 0; // filter type 0
    const src = y * width * 4;
    raw.set(pixels.subarray(src, src + width * 4), rowStart + 1);
  }
  const chunks = [SIGNATURE, chunk("IHDR", ihdr)];
  for (const [key, value] of Object.entries(texts)) {
    chunks.push(
      chunk("tEXt", Buffer.from(`${key}\0${value}`, "latin1")),
    );
  }
  chunks.push(chunk("IDAT", deflateSync(raw, { level: 9 })));
  chunks.push(chunk("IEND", Buffer.alloc(0)));
  return Buffer.concat(chunks);
}

/** Decode a PNG produced by encodePng (8-bit RGBA, filter 0 only). */
export function decodePng(buf: Buffer): Image & { texts: Record<string, string> } {
  if (!buf.subarray(0, 8).equals(SIGNATURE)) {
    throw new Error("not a PNG file");
  }
  let offset = 8;
  let width = 0;
  let height = 0;
  const idat: Buffer[] = [];
  const texts: Record<string, string> = {};
  while (offset < buf.length) {
    const length = buf.readUInt32BE(offset);
    const type = buf.toString("latin1", offset + 4, offset + 8);
    const data = buf.subarray(offset + 8, offset + 8 + length);
    const stored = buf.readUInt32BE(offset + 8 + length);
    const computed = crc32(buf.subarray(offset + 4, offset + 8 + length));
    if (stored !== computed) {
      throw new Error(`bad CRC in ${type} chunk`);
    }
    if (type === "IHDR") {
      width = data.readUInt32BE(0);
      height = data.readUInt32BE(4);
      if (data[8] !== 8 || data[9] !== 6 || data[12] !== 0) {
        throw new Error("unsupported PNG layout");
      }
    } else if (type === "IDAT") {
      idat.push(Buffer.from(data));
    } else if (type === "tEXt") {
      const sep = data.indexOf(0);
      texts[data.toString("latin1", 0, sep)] = data.toString(
        "latin1",
        sep + 1,
      );
    }
    offset += 12 + length;
  }
  const raw = inflateSync(Buffer.concat(idat));
  const pixels = new Uint8ClampedArray(width * height * 4);
  const stride = 1 + width * 4;
  for (let y = 0; y < height; y++) {
    if (raw[y * stride] !== 0) {
      throw new Error("only filter type 0 is supported");
    }
    pixels.set(
      raw.subarray(y * stride + 1, (y + 1) * stride),
      y * width * 4,
    );
  }
  return { width, height, pixels, texts };
}
