// WebSocket-backed transport for browser use. Typed structurally so the
// module compiles without DOM libs; pass the global WebSocket instance.

import type { Transport } from './client.js';

export interface SocketLike {
  send(data: string): void;
  addEventListener(type: 'message', handler: (ev: { data: string }) => void): void;
}

/** Wrap a connected socket into the line-based transport the client wants. */
export function socketTransport(socket: SocketLike): Transport {
  const handlers: Array<(line: string) => void> = [];
  let buffer = '';
  socket.addEventListener('message', (ev) => {
    buffer += ev.data;
    let nl: number;
    while ((nl = buffer.indexOf('\n')) >= 0) {
      const line = buffer.slice(0, nl);
      buffer = buffer.slice(nl + 1);
      for (const h of handlers) h(line);
    }
  });
  return {
    send: (line) => socket.send(line),
    onLine: (handler) => {
      handlers.push(handler);
    },
  };
}

/** session + server come from the page URL, e.g. ?session=demo&server=ws://host:7341 */
export function configFromQuery(search: string): { session: string; server: string } {
  const params = new URLSearchParams(search);
  return {
    session: params.get('session') ?? 'default',
    server: params.get('server') ?? 'ws://127.0.0.1:7341',
  };
}
