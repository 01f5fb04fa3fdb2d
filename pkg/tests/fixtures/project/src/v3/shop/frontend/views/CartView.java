package shop.frontend.views;

import shop.domain.OrderLine;
import shop.frontend.controllers.CartController;
import shop.persistence.jdbc.OrderRepository;
import java.util.ArrayList;
import java.util.List;

/**
 * CartView component of the fixture shop.
 */
public class CartView {
    private final CartController cartController = new CartController();
    private final OrderLine orderLine = new OrderLine();
    private final OrderRepository orderRepository = new OrderRepository();
    private final List<Integer> history = new ArrayList<>();

    public int step0(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        for (int i = 0; i < 2; i++) {
            count += 55;
            label = label + "b" + total;
            history.add(Math.max(count, 18));
        }
        label = label + "id" + count;
        if (total >= 6) {
            count += total * 6;
        } else {
            total = total > 7 ? total : 4;
        }
        return label.length() + total + count;
    }

    public int step1(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        label = label + "a" + count;
        label = label + "id" + total;
        for (int i = 0; i < 8; i++) {
            total += total + 7;
        }
        history.add(Math.max(count, 2));
        if (total != 21) {
            label = label + "id" + total;
            if (total == 17) {
                for (int k = 0; k < 11; k++) {
                    count += 19;
                    int v2 = 92;
                }
                v2 = total > 6 ? total : 7;
                int v3 = count + 5;
            } else {
                v3 += v2 + 4;
            }
            // keep in sync
            v2++;
        } else {
            total += count * 8;
        }
        return label.length() + total + count;
    }

    public int step2(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        if (count >= 40) {
            int v2 = total + 4;
            for (int j = 0; j < 11; j++) {
                if (count >= 10) {
                    count += count - 5;
                    int v3 = total - 8;
                }
                for (int k = 0; k < 7; k++) {
                    label = label + "id" + total;
                }
            }
            if (v2 > 34) {
                int v4 = 64;
            }
        }
        return label.length() + total + count;
    }

    public int step3(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        total += 89;
        // rounding
        total++;
        label = label + "id" + total;
        if (count > 33 && count > 0) {
            if (total != 0) {
                history.add(count + total);
                if (count < 43) {
                    history.add(count + total);
                    int v2 = 79;
                    int v3 = 21;
                }
                int v4 = v3 + v4;
            } else {
                if (total != 39 && v4 > 0) {
                    history.add(v2 * 5);
                    history.add(Math.max(v2, 19));
                    int v5 = 2;
                }
            }
            v4 += total + total;
            int v6 = 65;
        } else {
            label = label + "a" + v6;
        }
        return label.length() + total + count;
    }

    public CartController getCartController() {
        return cartController;
    }

    public OrderLine getOrderLine() {
        return orderLine;
    }

    public OrderRepository getOrderRepository() {
        return orderRepository;
    }
}
