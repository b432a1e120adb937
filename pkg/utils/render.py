# utils/render.py
# -*- coding: utf-8 -*-
"""
把单个 pipe dream 画成 PNG（调试用的小图，不是绘图功能）：
  - cross：十字
  - bump：两段四分之一圆弧
  - 反对角线：半 bump（只有上进左出那一段）
  - fake cross：灰底
顶边标管道号，左边标 δ(P)(r)。
"""
import io
import logging
from pathlib import Path
from typing import Union

from PIL import Image, ImageDraw, ImageFont

from utils.pipedream_engine import PipeDream, trace

log = logging.getLogger("render")

WHITE, GREY, BLACK = 255, 200, 0


def save_bytes(path: Union[str, Path], data: bytes) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "wb") as f:
        f.write(data)
    return p


def pipe_dream_image(P: PipeDream, tile: int = 48, margin: int = 32, width: int = 3) -> Image.Image:
    n = P.n
    tr = trace(P)
    size = n * tile + 2 * margin
    img = Image.new("L", (size, size), WHITE)
    draw = ImageDraw.Draw(img)
    font = ImageFont.load_default()
    half = tile // 2

    for r in range(1, n + 1):
        for c in range(1, n + 2 - r):
            x0 = margin + (c - 1) * tile
            y0 = margin + (r - 1) * tile
            box = (x0, y0, x0 + tile, y0 + tile)
            if (r, c) in tr.fake_crosses:
                draw.rectangle(box, fill=GREY)
            draw.rectangle(box, outline=GREY if r + c == n + 1 else BLACK, width=1)

            if r + c <= n and P.has_cross((r, c)):
                draw.line((x0 + half, y0, x0 + half, y0 + tile), fill=BLACK, width=width)
                draw.line((x0, y0 + half, x0 + tile, y0 + half), fill=BLACK, width=width)
                continue
            # 上进左出：圆心在左上角
            draw.arc((x0 - half, y0 - half, x0 + half, y0 + half), 0, 90, fill=BLACK, width=width)
            if r + c <= n:
                # 右进下出：圆心在右下角
                draw.arc((x0 + tile - half, y0 + tile - half, x0 + tile + half, y0 + tile + half),
                         180, 270, fill=BLACK, width=width)

    for c in range(1, n + 1):
        draw.text((margin + (c - 1) * tile + half - 3, margin // 2 - 6), str(c), fill=BLACK, font=font)
    for r in range(1, n + 1):
        draw.text((margin // 2 - 6, margin + (r - 1) * tile + half - 6), str(tr.demazure(r)),
                  fill=BLACK, font=font)
    return img


def pipe_dream_png(P: PipeDream, tile: int = 48) -> bytes:
    buf = io.BytesIO()
    pipe_dream_image(P, tile=tile).save(buf, format="PNG", optimize=True)
    return buf.getvalue()


def draw_pipe_dream(P: PipeDream, path: Union[str, Path], tile: int = 48) -> Path:
    out = save_bytes(path, pipe_dream_png(P, tile=tile))
    log.debug("saved pipe dream picture %s", out)
    return out
