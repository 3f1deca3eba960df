// Application wiring: store + renderer + controls.

import { SessionClient } from './client.js';
import { saveOffset } from './layout.js';
import { panelLines, potentialText, renderQuiver } from './render.js';
import { ExplorerStore } from './store.js';

const THREE_CYCLE = {
  quiver: {
    vertices: ['1', '2', '3'],
    arrows: [
      { src: '1', tgt: '2', w: 1 },
      { src: '2', tgt: '3', w: 1 },
      { src: '3', tgt: '1', w: 1 },
    ],
  },
  potential: [{ coeff: '1', cycle: ['1->2', '2->3', '3->1'] }],
};

export function bootstrap(root: HTMLElement, baseUrl = ''): ExplorerStore {
  const client = new SessionClient(baseUrl);
  const store = new ExplorerStore(client);

  root.innerHTML = `
    <header>
      <h1>quiverlab explorer</h1>
      <div class="controls">
        <button id="load-three-cycle">3-cycle</button>
        <label>floriated m0 <input id="m0" type="number" value="4" min="3" style="width:4em"></label>
        <label>petals <input id="petals" type="text" value="1:3,2:3" style="width:8em"></label>
        <button id="load-floriated">build</button>
        <button id="undo">undo</button>
        <span id="spinner" hidden>⟳</span>
      </div>
      <div id="error" class="error" hidden></div>
    </header>
    <main>
      <svg id="quiver" width="640" height="460"></svg>
      <aside>
        <h2>potential</h2><ul id="potential"></ul>
        <h2>invariants</h2><ul id="panel"></ul>
        <h2>history</h2><ol id="history"></ol>
      </aside>
    </main>
  `;

  const svg = root.querySelector('#quiver') as SVGSVGElement;
  const errorBox = root.querySelector('#error') as HTMLElement;
  const spinner = root.querySelector('#spinner') as HTMLElement;
  const potentialList = root.querySelector('#potential') as HTMLElement;
  const panelList = root.querySelector('#panel') as HTMLElement;
  const historyList = root.querySelector('#history') as HTMLElement;

  store.subscribe((state) => {
    spinner.hidden = !state.busy && state.queuedClicks.length === 0;
    errorBox.hidden = !state.error;
    if (state.error) errorBox.textContent = state.error;
    if (!state.snapshot) return;
    renderQuiver(svg, state.snapshot, {
      onVertexClick: (vertex) => void store.clickVertex(vertex),
      onDrag: (vertex, dx, dy) => {
        saveOffset(state.snapshot!.id, vertex, { x: dx, y: dy });
        renderQuiver(svg, state.snapshot!, {
          onVertexClick: (v) => void store.clickVertex(v),
        });
      },
    });
    potentialList.innerHTML = '';
    for (const line of potentialText(state.snapshot.potential)) {
      const li = document.createElement('li');
      li.textContent = line;
      potentialList.appendChild(li);
    }
    panelList.innerHTML = '';
    for (const line of panelLines(state.panel)) {
      const li = document.createElement('li');
      li.textContent = line;
      panelList.appendChild(li);
    }
    historyList.innerHTML = '';
    for (const entry of state.snapshot.history) {
      const li = document.createElement('li');
      li.textContent = `μ at ${entry.vertex}`;
      historyList.appendChild(li);
    }
  });

  (root.querySelector('#load-three-cycle') as HTMLButtonElement).addEventListener(
    'click', () => void store.createFromQP(THREE_CYCLE),
  );
  (root.querySelector('#load-floriated') as HTMLButtonElement).addEventListener('click', () => {
    const m0 = Number((root.querySelector('#m0') as HTMLInputElement).value);
    const raw = (root.querySelector('#petals') as HTMLInputElement).value.trim();
    const petals = raw
      ? raw.split(',').map((part) => part.split(':').map(Number) as [number, number])
      : [];
    void store.createFromFloriated(m0, petals);
  });
  (root.querySelector('#undo') as HTMLButtonElement).addEventListener(
    'click', () => void store.undo(),
  );

  return store;
}

declare global {
  interface Window {
    quiverlabBootstrap?: typeof bootstrap;
  }
}

if (typeof window !== 'undefined') {
  window.quiverlabBootstrap = bootstrap;
  const root = document.getElementById('app');
  if (root) {
    const params = new URLSearchParams(window.location.search);
    const api = params.get('api') ?? 'http://127.0.0.1:8000';
    bootstrap(root, api);
  }
}
