"""HTML form extraction and deterministic layout estimation.

The layout estimator replaces a rendering engine: a single-column flow whose
geometry is fully determined by a LayoutConfig, optionally patched per element
from a sidecar override map. Identical input always yields identical output.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from html.parser import HTMLParser
from types import MappingProxyType
from typing import Mapping, Optional

from .model import (
    ElementKind,
    FormDocument,
    FormElement,
    Geometry,
    UnknownElementError,
)

#: input[type=...] values accepted and their element kinds; everything else
#: (hidden, file, range, ...) is excluded from the document.
_INPUT_TYPE_KINDS: Mapping[str, ElementKind] = MappingProxyType(
    {
        "text": ElementKind.TEXT_INPUT,
        "email": ElementKind.TEXT_INPUT,
        "number": ElementKind.TEXT_INPUT,
        "tel": ElementKind.TEXT_INPUT,
        "url": ElementKind.TEXT_INPUT,
        "search": ElementKind.TEXT_INPUT,
        "password": ElementKind.PASSWORD,
        "checkbox": ElementKind.CHECKBOX,
        "radio": ElementKind.RADIO,
        "submit": ElementKind.SUBMIT,
        "button": ElementKind.BUTTON,
    }
)


@dataclass
class _RawElement:
    kind: ElementKind
    attrs: dict[str, Optional[str]]
    doc_pos: int
    form_index: int
    options: list[str] = field(default_factory=list)
    wrapping_label: Optional[str] = None
    inner_text: str = ""


def _collapse(text: str) -> str:
    return " ".join(text.split())


class _FormHTML(HTMLParser):
    """Streaming extractor tolerant of malformed markup; never raises."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.raw: list[_RawElement] = []
        self.diagnostics: list[str] = []
        self.form_count = 0
        self._form_depth = 0
        self._doc_pos = 0
        self._title_parts: list[str] = []
        self._in_title = False
        # open <label> scopes: (for_id, text parts, enclosed raw elements)
        self._labels: list[tuple[Optional[str], list[str], list[_RawElement]]] = []
        self.label_for: dict[str, str] = {}
        self._select: Optional[_RawElement] = None
        self._option_parts: Optional[list[str]] = None
        self._option_value: Optional[str] = None
        self._pending: Optional[_RawElement] = None  # open textarea/button

    # -- element emission --

    def _emit(self, raw: _RawElement) -> None:
        for _, _, enclosed in self._labels:
            enclosed.append(raw)
        self.raw.append(raw)

    def _new_raw(self, kind: ElementKind, attrs: dict[str, Optional[str]]) -> _RawElement:
        raw = _RawElement(kind, attrs, self._doc_pos, self.form_count - 1)
        self._doc_pos += 1
        return raw

    def _handle_input(self, attrs: dict[str, Optional[str]]) -> None:
        input_type = (attrs.get("type") or "text").lower()
        if input_type == "hidden" or "hidden" in attrs:
            self.diagnostics.append(f"skipped hidden input (name={attrs.get('name')!r})")
            return
        kind = _INPUT_TYPE_KINDS.get(input_type)
        if kind is None:
            self.diagnostics.append(
                f"skipped unsupported input type {input_type!r} (name={attrs.get('name')!r})"
            )
            return
        raw = self._new_raw(kind, attrs)
        if kind is ElementKind.RADIO:
            raw.options = [attrs.get("value") or "on"]
        self._emit(raw)

    # -- HTMLParser callbacks --

    def handle_starttag(self, tag: str, attr_pairs) -> None:
        tag = tag.lower()
        attrs: dict[str, Optional[str]] = {}
        for name, value in attr_pairs:
            attrs.setdefault(name.lower(), value)

        if tag == "title":
            self._in_title = True
            return
        if tag == "form":
            self._form_depth += 1
            if self._form_depth == 1:
                self.form_count += 1
            return
        if tag == "label":
            self._labels.append((attrs.get("for"), [], []))
            return
        if self._form_depth <= 0:
            return
        if tag == "input":
            self._close_pending()
            self._handle_input(attrs)
        elif tag == "select":
            self._close_pending()
            raw = self._new_raw(ElementKind.SELECT, attrs)
            self._select = raw
            self._emit(raw)
        elif tag == "option" and self._select is not None:
            self._finish_option()
            self._option_parts = []
            self._option_value = attrs.get("value")
        elif tag == "textarea":
            self._close_pending()
            self._pending = self._new_raw(ElementKind.TEXT_AREA, attrs)
        elif tag == "button":
            self._close_pending()
            button_type = (attrs.get("type") or "submit").lower()
            kind = ElementKind.BUTTON if button_type == "button" else ElementKind.SUBMIT
            if button_type not in ("button", "submit"):
                self.diagnostics.append(f"skipped unsupported button type {button_type!r}")
                return
            self._pending = self._new_raw(kind, attrs)

    def handle_startendtag(self, tag: str, attrs) -> None:
        self.handle_starttag(tag, attrs)

    def handle_endtag(self, tag: str) -> None:
        tag = tag.lower()
        if tag == "title":
            self._in_title = False
        elif tag == "form":
            self._form_depth = max(0, self._form_depth - 1)
        elif tag == "label":
            if self._labels:
                for_id, parts, enclosed = self._labels.pop()
                text = _collapse("".join(parts))
                if for_id and for_id not in self.label_for:
                    self.label_for[for_id] = text
                for raw in enclosed:
                    if raw.wrapping_label is None:
                        raw.wrapping_label = text
        elif tag == "select":
            self._finish_option()
            self._select = None
        elif tag == "option":
            self._finish_option()
        elif tag in ("textarea", "button"):
            self._close_pending()

    def handle_data(self, data: str) -> None:
        if self._in_title:
            self._title_parts.append(data)
        if self._option_parts is not None:
            self._option_parts.append(data)
        elif self._pending is not None:
            self._pending.inner_text += data
        for _, parts, _ in self._labels:
            parts.append(data)

    # -- finalization --

    def _finish_option(self) -> None:
        if self._option_parts is None or self._select is None:
            self._option_parts = None
            return
        text = _collapse("".join(self._option_parts))
        self._select.options.append(text or (self._option_value or ""))
        self._option_parts = None
        self._option_value = None

    def _close_pending(self) -> None:
        if self._pending is not None:
            raw = self._pending
            self._pending = None
            raw.inner_text = _collapse(raw.inner_text)
            self._emit(raw)

    def close(self) -> None:
        super().close()
        self._finish_option()
        self._close_pending()

    @property
    def title(self) -> str:
        return _collapse("".join(self._title_parts))


@dataclass(frozen=True)
class ParsedForm:
    document: FormDocument
    diagnostics: tuple[str, ...]


def _resolve_id(raw: _RawElement, used: set[str]) -> str:
    candidates = []
    if raw.attrs.get("id"):
        candidates.append(raw.attrs["id"])
    name = raw.attrs.get("name")
    if name:
        if raw.kind is ElementKind.RADIO and raw.attrs.get("value"):
            candidates.append(f"{name}_{raw.attrs['value']}")
        candidates.append(name)
    candidates.append(f"{raw.kind.value}_{raw.doc_pos}")
    for candidate in candidates:
        if candidate not in used:
            used.add(candidate)
            return candidate
    n = 2
    base = candidates[0]
    while f"{base}_{n}" in used:
        n += 1
    used.add(f"{base}_{n}")
    return f"{base}_{n}"


def _resolve_label(raw: _RawElement, label_for: Mapping[str, str]) -> str:
    # spec'd precedence: <label for=...>, wrapping label, placeholder, name;
    # then value/inner text (buttons) and the raw id attribute as fallbacks.
    html_id = raw.attrs.get("id")
    if html_id and label_for.get(html_id):
        return label_for[html_id]
    if raw.wrapping_label:
        return raw.wrapping_label
    if raw.attrs.get("placeholder"):
        return _collapse(raw.attrs["placeholder"] or "")
    name = raw.attrs.get("name")
    if name:
        if raw.kind is ElementKind.RADIO:
            return f"{name}={raw.attrs.get('value') or 'on'}"
        return name
    if raw.attrs.get("value"):
        return _collapse(raw.attrs["value"] or "")
    if raw.inner_text:
        return raw.inner_text
    return html_id or ""


def _tab_key(raw: _RawElement) -> tuple[int, int, int]:
    tabindex_attr = raw.attrs.get("tabindex")
    try:
        tabindex = int(tabindex_attr) if tabindex_attr is not None else 0
    except ValueError:
        tabindex = 0
    if tabindex >= 1:
        return (0, tabindex, raw.doc_pos)
    return (1, 0, raw.doc_pos)


def parse_document(html: str, source: str = "inline") -> ParsedForm:
    """Best-effort parse of `html` into a FormDocument plus diagnostics.

    Only elements inside <form> scopes are kept, in document order. Hidden and
    unsupported inputs are dropped. Never raises on malformed input.
    """
    extractor = _FormHTML()
    if not html or not html.strip():
        return ParsedForm(
            FormDocument(source=source, title="", elements=()),
            ("input is empty; returning empty document",),
        )
    extractor.feed(html)
    extractor.close()

    diagnostics = list(extractor.diagnostics)
    if extractor.form_count == 0:
        diagnostics.append("no <form> element found")
    multi_form = extractor.form_count > 1

    raws = []
    for raw in extractor.raw:
        if raw.kind in (ElementKind.SELECT, ElementKind.RADIO) and not raw.options:
            diagnostics.append(
                f"skipped {raw.kind.value} without options (name={raw.attrs.get('name')!r})"
            )
            continue
        raws.append(raw)

    focus_rank = {
        id(raw): rank
        for rank, raw in enumerate(sorted(raws, key=_tab_key))
    }
    used_ids: set[str] = set()
    elements = []
    for raw in raws:
        label = _resolve_label(raw, extractor.label_for)
        if multi_form:
            label = f"[form {raw.form_index + 1}] {label}".rstrip()
        elements.append(
            FormElement(
                id=_resolve_id(raw, used_ids),
                kind=raw.kind,
                label=label,
                focus_index=focus_rank[id(raw)],
                options=tuple(raw.options),
            )
        )
    document = FormDocument(source=source, title=extractor.title, elements=tuple(elements))
    return ParsedForm(document, tuple(diagnostics))


def parse_html(html: str, source: str = "inline") -> FormDocument:
    return parse_document(html, source).document


# --- deterministic layout -------------------------------------------------

DEFAULT_WIDTHS: Mapping[ElementKind, int] = MappingProxyType(
    {
        ElementKind.TEXT_INPUT: 220,
        ElementKind.PASSWORD: 220,
        ElementKind.TEXT_AREA: 320,
        ElementKind.SELECT: 180,
        ElementKind.CHECKBOX: 18,
        ElementKind.RADIO: 18,
        ElementKind.BUTTON: 110,
        ElementKind.SUBMIT: 110,
    }
)

DEFAULT_HEIGHTS: Mapping[ElementKind, int] = MappingProxyType(
    {
        ElementKind.TEXT_INPUT: 32,
        ElementKind.PASSWORD: 32,
        ElementKind.TEXT_AREA: 44,
        ElementKind.SELECT: 32,
        ElementKind.CHECKBOX: 18,
        ElementKind.RADIO: 18,
        ElementKind.BUTTON: 36,
        ElementKind.SUBMIT: 36,
    }
)


@dataclass(frozen=True)
class LayoutConfig:
    """Single-column flow layout; fully determines geometry for a document."""

    origin_x: int = 20
    origin_y: int = 20
    row_height: int = 44
    row_gap: int = 10
    label_column_width: int = 160
    widths: Mapping[ElementKind, int] = DEFAULT_WIDTHS
    heights: Mapping[ElementKind, int] = DEFAULT_HEIGHTS

    def __post_init__(self) -> None:
        if self.row_height <= 0:
            raise ValueError(f"row_height must be > 0, got {self.row_height}")
        if self.row_gap < 0 or self.origin_x < 0 or self.origin_y < 0 or self.label_column_width < 0:
            raise ValueError("origins, row_gap and label_column_width must be >= 0")
        widths = dict(DEFAULT_WIDTHS)
        widths.update(self.widths)
        heights = dict(DEFAULT_HEIGHTS)
        heights.update(self.heights)
        for kind in ElementKind:
            if widths[kind] <= 0 or heights[kind] <= 0:
                raise ValueError(f"default size for {kind.value} must be positive")
            # keeps rows non-overlapping: y advances by row_height + row_gap
            if heights[kind] > self.row_height:
                raise ValueError(
                    f"height for {kind.value} ({heights[kind]}) exceeds row_height "
                    f"({self.row_height})"
                )
        object.__setattr__(self, "widths", MappingProxyType(widths))
        object.__setattr__(self, "heights", MappingProxyType(heights))

    @classmethod
    def from_dict(cls, data: Mapping) -> "LayoutConfig":
        kwargs = {}
        for key in ("origin_x", "origin_y", "row_height", "row_gap", "label_column_width"):
            if key in data:
                kwargs[key] = int(data[key])
        for key in ("widths", "heights"):
            if key in data:
                kwargs[key] = {ElementKind(k): int(v) for k, v in data[key].items()}
        return cls(**kwargs)


def estimate_layout(doc: FormDocument, config: Optional[LayoutConfig] = None) -> FormDocument:
    """Assign geometry by a vertical flow: element i sits on row i."""
    config = config or LayoutConfig()
    x = config.origin_x + config.label_column_width
    pitch = config.row_height + config.row_gap
    elements = tuple(
        replace(
            element,
            geometry=Geometry(
                x=float(x),
                y=float(config.origin_y + i * pitch),
                width=float(config.widths[element.kind]),
                height=float(config.heights[element.kind]),
            ),
        )
        for i, element in enumerate(doc.elements)
    )
    return replace(doc, elements=elements)


def apply_layout_overrides(doc: FormDocument, overrides: Mapping[str, Geometry]) -> FormDocument:
    """Replace geometry wholesale for overridden ids; unknown ids are an error."""
    for element_id in overrides:
        if not doc.has(element_id):
            raise UnknownElementError(element_id)
    elements = tuple(
        replace(element, geometry=overrides[element.id]) if element.id in overrides else element
        for element in doc.elements
    )
    return replace(doc, elements=elements)


def overrides_from_dict(data: Mapping) -> dict[str, Geometry]:
    """Sidecar override file: {element_id: {x, y, width, height}} in pixels."""
    return {
        element_id: Geometry(
            x=float(box["x"]),
            y=float(box["y"]),
            width=float(box["width"]),
            height=float(box["height"]),
        )
        for element_id, box in data.items()
    }
